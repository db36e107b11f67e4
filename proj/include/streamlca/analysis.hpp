#ifndef STREAMLCA_ANALYSIS_HPP
#define STREAMLCA_ANALYSIS_HPP

#include <map>
#include <string>

#include "streamlca/diary.hpp"
#include "streamlca/stats.hpp"

namespace streamlca {

// Mean daily in-model streaming hours per participant (weekly total / 7).
std::map<std::string, double> mean_daily_hours(const DiaryDataset& ds);

// Per-participant daily totals split into weekend (Sat/Sun) and weekday
// means, for the weekend-vs-weekday comparison.
struct WeekSplit {
  std::vector<double> weekday_mean;  // one value per participant
  std::vector<double> weekend_mean;
  std::vector<std::string> ids;
};
WeekSplit weekday_weekend_split(const DiaryDataset& ds);

struct DeterminantsReport {
  RegressionResult hours_model;  // outcome: mean daily streaming hours
  RegressionResult gwp_model;    // outcome: weekly GWP total
  std::size_t n_used = 0;        // rows surviving listwise deletion
  std::vector<std::string> excluded;  // participant ids dropped, with reason
};

// Regressions of streaming duration and weekly GWP on the nine behavioral /
// socio-demographic predictors. Coding: membership and gender (female = 1)
// as 0/1 indicators, gender "other" rows excluded when fewer than two;
// education and income as ordinal levels; flat rate as GB with unlimited
// mapped to twice the largest finite tier and unknown dropped listwise.
DeterminantsReport determinants_report(
    const DiaryDataset& ds,
    const std::map<std::string, double>& weekly_gwp);

}  // namespace streamlca

#endif
