#ifndef STREAMLCA_STATS_HPP
#define STREAMLCA_STATS_HPP

#include <optional>
#include <string>
#include <vector>

namespace streamlca {

struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0;
  std::optional<double> sd;  // sample sd (n-1); absent for n = 1
  double min = 0;
  double max = 0;
};

DescriptiveStats describe(const std::vector<double>& values);

struct TTestResult {
  double t = 0;
  std::size_t df = 0;
  double p = 1;        // two-sided
  double cohens_d = 0;
};

// Paired two-sided t-test on equal-length samples.
TTestResult paired_ttest(const std::vector<double>& a,
                         const std::vector<double>& b);

double pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// Regularized incomplete beta I_x(a, b) via continued fraction, targeting
// 1e-10 relative precision.
double regularized_incomplete_beta(double a, double b, double x);

// Student-t CDF with df degrees of freedom.
double student_t_cdf(double t, double df);

// Two-sided p-value for a t statistic.
double two_sided_p(double t, double df);

struct PredictorStats {
  std::string label;
  double b = 0;     // raw coefficient
  double se = 0;    // standard error
  double beta = 0;  // standardized coefficient
  double t = 0;
  double p = 1;
};

struct RegressionResult {
  std::vector<PredictorStats> predictors;
  double intercept = 0;
  double intercept_se = 0;
  double r_squared = 0;
  std::size_t n = 0;
};

// OLS of y on the given columns (intercept added internally), via
// Householder QR. Throws ValidationError on rank deficiency (naming the
// offending column) or insufficient n.
RegressionResult ols(const std::vector<double>& y,
                     const std::vector<std::vector<double>>& columns,
                     const std::vector<std::string>& labels);

}  // namespace streamlca

#endif
