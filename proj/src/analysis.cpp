#include "streamlca/analysis.hpp"

#include <algorithm>

namespace streamlca {

std::map<std::string, double> mean_daily_hours(const DiaryDataset& ds) {
  std::map<std::string, double> out;
  for (const auto& p : ds.participants) out[p.participant_id] = 0;
  for (const auto& e : ds.entries)
    if (in_model(e.platform)) out[e.participant_id] += e.hours;
  for (auto& [id, h] : out) h /= 7.0;
  return out;
}

WeekSplit weekday_weekend_split(const DiaryDataset& ds) {
  WeekSplit out;
  for (const auto& p : ds.participants) {
    double weekday = 0, weekend = 0;
    for (const auto& e : ds.entries) {
      if (e.participant_id != p.participant_id || !in_model(e.platform))
        continue;
      (e.day_index >= 6 ? weekend : weekday) += e.hours;
    }
    out.ids.push_back(p.participant_id);
    out.weekday_mean.push_back(weekday / 5.0);
    out.weekend_mean.push_back(weekend / 2.0);
  }
  return out;
}

namespace {

double education_level_code(const std::string& s) {
  if (s == "primary") return 0;
  if (s == "secondary") return 1;
  return 2;  // tertiary
}

double income_code(const std::string& s) {
  if (s == "low") return 1;
  if (s == "mid") return 2;
  return 3;  // high
}

}  // namespace

DeterminantsReport determinants_report(
    const DiaryDataset& ds, const std::map<std::string, double>& weekly_gwp) {
  DeterminantsReport rep;
  const auto daily = mean_daily_hours(ds);

  std::size_t n_other = 0;
  for (const auto& p : ds.participants)
    if (p.gender == "other") ++n_other;

  double max_finite_tier = 0;
  for (const auto& p : ds.participants)
    if (p.mobile_flatrate.kind == FlatrateKind::limited)
      max_finite_tier =
          std::max(max_finite_tier, p.mobile_flatrate.gb_per_month);
  const double unlimited_value =
      max_finite_tier > 0 ? 2.0 * max_finite_tier : 0.0;

  const std::vector<std::string> labels = {
      "digital_literacy", "impact_knowledge", "personal_norm",
      "platform_membership", "flatrate_gb", "age", "education", "income",
      "gender_female"};
  std::vector<std::vector<double>> cols(labels.size());
  std::vector<double> y_hours, y_gwp;

  for (const auto& p : ds.participants) {
    // listwise deletion
    if (p.mobile_flatrate.kind == FlatrateKind::unknown) {
      rep.excluded.push_back(p.participant_id + " (flat rate unknown)");
      continue;
    }
    if (p.gender == "other" && n_other < 2) {
      rep.excluded.push_back(p.participant_id + " (gender 'other', n < 2)");
      continue;
    }
    auto gwp_it = weekly_gwp.find(p.participant_id);
    if (gwp_it == weekly_gwp.end()) {
      rep.excluded.push_back(p.participant_id + " (no footprint)");
      continue;
    }
    const double flat = p.mobile_flatrate.kind == FlatrateKind::unlimited
                            ? unlimited_value
                            : p.mobile_flatrate.gb_per_month;
    cols[0].push_back(p.digital_literacy);
    cols[1].push_back(p.impact_knowledge);
    cols[2].push_back(p.personal_norm);
    cols[3].push_back(p.paid_membership ? 1.0 : 0.0);
    cols[4].push_back(flat);
    cols[5].push_back(p.age);
    cols[6].push_back(education_level_code(p.education_level));
    cols[7].push_back(income_code(p.income_band));
    cols[8].push_back(p.gender == "female" ? 1.0 : 0.0);
    y_hours.push_back(daily.at(p.participant_id));
    y_gwp.push_back(gwp_it->second);
  }

  rep.n_used = y_hours.size();
  rep.hours_model = ols(y_hours, cols, labels);
  rep.gwp_model = ols(y_gwp, cols, labels);
  return rep;
}

}  // namespace streamlca
