#pragma once

#include <span>
#include <string>
#include <vector>

namespace ecgi {

/// Score of one image pair; side A is conventionally LCI, side B WL.
struct PairScore {
  std::string pair_id;
  double s_a = 0.0;
  double s_b = 0.0;

  double delta() const noexcept { return s_a - s_b; }
};

struct TTestResult {
  double t = 0.0;  ///< +-infinity when the differences are constant and nonzero
  double p = 1.0;  ///< two-tailed
  int df = 0;
};

struct BoxplotSummary {
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  ///< ascending
};

struct PairedReport {
  int n = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  TTestResult test;
  double pct_a_greater = 0.0;
  double pct_ties = 0.0;
  BoxplotSummary boxplot_a;
  BoxplotSummary boxplot_b;
};

/// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-tailed tail probability P(|T| >= |t|) for Student's t with df dof.
double student_t_two_tailed(double t, double df);

/// Paired t-test on a - b. Throws LengthMismatch or TooFewSamples (n < 2).
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Quantile with linear interpolation between order statistics at
/// position q (n - 1). `sorted` must be ascending and non-empty.
double quantile_linear(std::span<const double> sorted, double q);

/// Tukey box: quartiles by quantile_linear, whiskers at the most extreme
/// points within 1.5 IQR of the box. Throws TooFewSamples on empty input.
BoxplotSummary boxplot_stats(std::span<const double> values);

/// Means, paired t-test, strict win percentage, and boxplots per side.
PairedReport summarize(std::span<const PairScore> pairs);

}  // namespace ecgi
