#include "ecgi/paired.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/core.h>

#include "ecgi/error.hpp"

namespace ecgi {

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEpsilon) break;
  }
  return h;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("incomplete beta undefined for a={}, b={}, x={}", a, b, x));
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be > 0");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(0.5 * df, 0.5, x);
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("paired samples differ in length ({} vs {})", a.size(), b.size()));
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::TooFewSamples,
                fmt::format("paired t-test needs n >= 2, got {}", a.size()));
  }
  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];

  const double mean = mean_of(diff);
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult r;
  r.df = static_cast<int>(n - 1);
  if (sd == 0.0) {
    if (mean == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p = 0.0;
    }
    return r;
  }
  r.t = mean * std::sqrt(static_cast<double>(n)) / sd;
  r.p = student_t_two_tailed(r.t, r.df);
  return r;
}

double quantile_linear(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxplotSummary boxplot_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::TooFewSamples, "boxplot of an empty vector");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());

  BoxplotSummary s;
  s.q25 = quantile_linear(v, 0.25);
  s.median = quantile_linear(v, 0.5);
  s.q75 = quantile_linear(v, 0.75);
  const double iqr = s.q75 - s.q25;
  const double fence_low = s.q25 - 1.5 * iqr;
  const double fence_high = s.q75 + 1.5 * iqr;

  s.whisker_low = s.q25;
  s.whisker_high = s.q75;
  bool have_low = false;
  for (double x : v) {
    if (x < fence_low || x > fence_high) {
      s.outliers.push_back(x);
      continue;
    }
    if (!have_low) {
      s.whisker_low = x;
      have_low = true;
    }
    s.whisker_high = x;
  }
  return s;
}

PairedReport summarize(std::span<const PairScore> pairs) {
  if (pairs.size() < 2) {
    throw Error(ErrorCode::TooFewSamples,
                fmt::format("summary needs at least 2 pairs, got {}", pairs.size()));
  }
  std::vector<double> a, b;
  a.reserve(pairs.size());
  b.reserve(pairs.size());
  int wins = 0;
  int ties = 0;
  for (const PairScore& p : pairs) {
    a.push_back(p.s_a);
    b.push_back(p.s_b);
    if (p.s_a > p.s_b) ++wins;
    if (p.s_a == p.s_b) ++ties;
  }

  PairedReport r;
  r.n = static_cast<int>(pairs.size());
  r.mean_a = mean_of(a);
  r.mean_b = mean_of(b);
  r.test = paired_t_test(a, b);
  r.pct_a_greater = 100.0 * wins / r.n;
  r.pct_ties = 100.0 * ties / r.n;
  r.boxplot_a = boxplot_stats(a);
  r.boxplot_b = boxplot_stats(b);
  return r;
}

}  // namespace ecgi
