#include "streamlca/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streamlca/error.hpp"

namespace streamlca {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-12;
  constexpr int kMaxIter = 500;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace

DescriptiveStats describe(const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("describe: empty input");
  DescriptiveStats s;
  s.n = values.size();
  s.mean = mean_of(values);
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  s.min = *mn;
  s.max = *mx;
  if (s.n >= 2) s.sd = sample_sd(values);
  return s;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw Error("incomplete beta: a, b must be > 0");
  if (x < 0 || x > 1) throw Error("incomplete beta: x must be in [0,1]");
  if (x == 0) return 0;
  if (x == 1) return 1;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0) throw Error("student_t_cdf: df must be > 0");
  if (t == 0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

double two_sided_p(double t, double df) {
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

TTestResult paired_ttest(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size())
    throw ValidationError("paired_ttest: length mismatch");
  if (a.size() < 2) throw ValidationError("paired_ttest: need n >= 2");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double md = mean_of(d);
  const double sd = sample_sd(d);
  if (sd == 0)
    throw ValidationError("paired_ttest: zero variance in differences");
  TTestResult r;
  const double n = static_cast<double>(d.size());
  r.t = md / (sd / std::sqrt(n));
  r.df = d.size() - 1;
  r.p = two_sided_p(r.t, static_cast<double>(r.df));
  r.cohens_d = md / sd;
  return r;
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ValidationError("pearson_r: length mismatch");
  if (x.size() < 2) throw ValidationError("pearson_r: need n >= 2");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0)
    throw ValidationError("pearson_r: degenerate variance");
  return sxy / std::sqrt(sxx * syy);
}

RegressionResult ols(const std::vector<double>& y,
                     const std::vector<std::vector<double>>& columns,
                     const std::vector<std::string>& labels) {
  const std::size_t n = y.size();
  const std::size_t k = columns.size();
  if (labels.size() != k) throw ValidationError("ols: labels/columns mismatch");
  for (const auto& col : columns)
    if (col.size() != n) throw ValidationError("ols: column length mismatch");
  if (n <= k + 1)
    throw ValidationError("ols: need n > k+1, got n=" + std::to_string(n) +
                          ", k=" + std::to_string(k));

  const std::size_t m = k + 1;  // intercept first
  // design matrix, column-major
  std::vector<std::vector<double>> A(m, std::vector<double>(n, 1.0));
  for (std::size_t j = 0; j < k; ++j) A[j + 1] = columns[j];
  std::vector<double> qty = y;

  // Householder QR; R accumulates in the top rows of A, Q'y in qty.
  std::vector<std::vector<double>> R(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    double norm = 0;
    for (std::size_t i = j; i < n; ++i) norm += A[j][i] * A[j][i];
    norm = std::sqrt(norm);
    const double col_scale = std::sqrt(static_cast<double>(n));
    if (norm <= 1e-12 * col_scale) {
      const std::string name = j == 0 ? "intercept" : labels[j - 1];
      throw ValidationError("ols: rank-deficient design, column '" + name +
                            "' is (near) linearly dependent");
    }
    double alpha = A[j][j] > 0 ? -norm : norm;
    std::vector<double> v(n, 0.0);
    for (std::size_t i = j; i < n; ++i) v[i] = A[j][i];
    v[j] -= alpha;
    double vnorm2 = 0;
    for (std::size_t i = j; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 > 0) {
      for (std::size_t c = j; c < m; ++c) {
        double dot = 0;
        for (std::size_t i = j; i < n; ++i) dot += v[i] * A[c][i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = j; i < n; ++i) A[c][i] -= f * v[i];
      }
      double dot = 0;
      for (std::size_t i = j; i < n; ++i) dot += v[i] * qty[i];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < n; ++i) qty[i] -= f * v[i];
    }
    for (std::size_t c = j; c < m; ++c) R[c][j] = A[c][j];
    if (std::fabs(R[j][j]) <= 1e-10 * col_scale) {
      const std::string name = j == 0 ? "intercept" : labels[j - 1];
      throw ValidationError("ols: rank-deficient design, column '" + name +
                            "' is (near) linearly dependent");
    }
  }

  // back substitution for coefficients
  std::vector<double> coef(m, 0.0);
  for (std::size_t jj = m; jj-- > 0;) {
    double s = qty[jj];
    for (std::size_t c = jj + 1; c < m; ++c) s -= R[c][jj] * coef[c];
    coef[jj] = s / R[jj][jj];
  }

  double rss = 0;
  for (std::size_t i = m; i < n; ++i) rss += qty[i] * qty[i];
  const double my = mean_of(y);
  double tss = 0;
  for (double v : y) tss += (v - my) * (v - my);
  if (tss == 0) throw ValidationError("ols: outcome has zero variance");
  const double df = static_cast<double>(n - m);
  const double sigma2 = rss / df;

  // R^{-1}, then cov = sigma2 * R^{-1} R^{-T}
  std::vector<std::vector<double>> Rinv(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    Rinv[j][j] = 1.0 / R[j][j];
    for (std::size_t i = j; i-- > 0;) {
      double s = 0;
      for (std::size_t c = i + 1; c <= j; ++c) s += R[c][i] * Rinv[j][c];
      Rinv[j][i] = -s / R[i][i];
    }
  }
  auto cov_diag = [&](std::size_t i) {
    double s = 0;
    for (std::size_t c = i; c < m; ++c) s += Rinv[c][i] * Rinv[c][i];
    return sigma2 * s;
  };

  const double sdy = std::sqrt(tss / static_cast<double>(n - 1));
  RegressionResult out;
  out.n = n;
  out.intercept = coef[0];
  out.intercept_se = std::sqrt(cov_diag(0));
  out.r_squared = 1.0 - rss / tss;
  for (std::size_t j = 0; j < k; ++j) {
    PredictorStats ps;
    ps.label = labels[j];
    ps.b = coef[j + 1];
    ps.se = std::sqrt(cov_diag(j + 1));
    ps.beta = ps.b * sample_sd(columns[j]) / sdy;
    ps.t = ps.se > 0 ? ps.b / ps.se : 0;
    ps.p = two_sided_p(ps.t, df);
    out.predictors.push_back(std::move(ps));
  }
  return out;
}

}  // namespace streamlca
