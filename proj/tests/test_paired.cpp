#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ecgi/error.hpp"
#include "ecgi/paired.hpp"
#include "support.hpp"

using namespace ecgi;

namespace {

std::vector<PairScore> make_pairs(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<PairScore> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({"p" + std::to_string(i), a[i], b[i]});
  return out;
}

}  // namespace

TEST_CASE("regularized incomplete beta closed forms") {
  // I_x(1, 1) = x; I_x(a, 1) = x^a; I_x(1, b) = 1 - (1 - x)^b.
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0}) {
    CHECK(regularized_incomplete_beta(1, 1, x) == doctest::Approx(x).epsilon(1e-14));
    CHECK(regularized_incomplete_beta(2.5, 1, x) ==
          doctest::Approx(std::pow(x, 2.5)).epsilon(1e-13));
    CHECK(regularized_incomplete_beta(1, 3, x) ==
          doctest::Approx(1 - std::pow(1 - x, 3)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(regularized_incomplete_beta(0, 1, 0.5), Error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1, 1, 1.5), Error);
}

TEST_CASE("Student-t tail probabilities") {
  // df = 1 is Cauchy: p = 1 - 2 atan(|t|) / pi.
  const double pi = std::acos(-1.0);
  for (double t : {0.1, 1.0, 3.0, 25.0}) {
    CHECK(student_t_two_tailed(t, 1) == doctest::Approx(1 - 2 * std::atan(t) / pi).epsilon(1e-12));
  }
  // df = 2: p = 1 - |t| / sqrt(2 + t^2).
  for (double t : {0.3, 2.0, 9.0}) {
    CHECK(student_t_two_tailed(t, 2) ==
          doctest::Approx(1 - t / std::sqrt(2 + t * t)).epsilon(1e-12));
  }
  CHECK(student_t_two_tailed(0.0, 7) == 1.0);
  CHECK(student_t_two_tailed(std::numeric_limits<double>::infinity(), 7) == 0.0);
}

TEST_CASE("incomplete-beta p matches quadrature of the t density") {
  for (double df : {1.0, 4.0, 30.0, 142.0}) {
    for (double t : {0.0, 0.5, 2.0, 5.0}) {
      const double oracle = testing::t_two_tailed_by_quadrature(t, df);
      CHECK(std::abs(student_t_two_tailed(t, df) - oracle) <= 1e-8);
    }
  }
}

TEST_CASE("quadrature oracle reproduces reference t-distribution values") {
  // Two-sided tail values from an independent statistics package.
  CHECK(testing::t_two_tailed_by_quadrature(0.5, 1) == doctest::Approx(0.7048327646991336).epsilon(1e-10));
  CHECK(testing::t_two_tailed_by_quadrature(2.0, 4) == doctest::Approx(0.1161165235168155).epsilon(1e-10));
  CHECK(testing::t_two_tailed_by_quadrature(5.0, 30) == doctest::Approx(2.3296685467007786e-05).epsilon(1e-8));
  CHECK(testing::t_two_tailed_by_quadrature(5.0, 142) == doctest::Approx(1.6645762044144854e-06).epsilon(1e-7));
}

TEST_CASE("p decreases monotonically in |t|") {
  for (double df : {1.0, 4.0, 30.0, 142.0}) {
    double prev = 1.0;
    for (double t = 0.05; t < 12.0; t += 0.05) {
      const double p = student_t_two_tailed(t, df);
      CHECK(p < prev);
      CHECK(student_t_two_tailed(-t, df) == p);
      prev = p;
    }
  }
}

TEST_CASE("paired_t_test examples") {
  SUBCASE("identical samples") {
    const std::vector<double> a{3.2, 4.1, 5.0, 2.2};
    const TTestResult r = paired_t_test(a, a);
    CHECK(r.t == 0.0);
    CHECK(r.p == 1.0);
    CHECK(r.df == 3);
  }
  SUBCASE("reference values") {
    // Frozen from an independent reference implementation of the paired test.
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 2, 4, 4, 7};
    const TTestResult r = paired_t_test(a, b);
    CHECK(r.df == 4);
    CHECK(r.t == doctest::Approx(-2.138089935299395).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(0.09930068321372677).epsilon(1e-10));
  }
  SUBCASE("constant nonzero difference") {
    const std::vector<double> a{2, 3, 4};
    const std::vector<double> b{1, 2, 3};
    const TTestResult r = paired_t_test(a, b);
    CHECK(std::isinf(r.t));
    CHECK(r.t > 0);
    CHECK(r.p == 0.0);
  }
  SUBCASE("errors") {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    try {
      paired_t_test(one, two);
      FAIL("expected LengthMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LengthMismatch);
    }
    try {
      paired_t_test(one, one);
      FAIL("expected TooFewSamples");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooFewSamples);
    }
  }
}

TEST_CASE("boxplot_stats examples") {
  SUBCASE("exact order statistics") {
    const std::vector<double> v{5, 3, 1, 4, 2};
    const BoxplotSummary b = boxplot_stats(v);
    CHECK(b.median == 3);
    CHECK(b.q25 == 2);
    CHECK(b.q75 == 4);
    CHECK(b.whisker_low == 1);
    CHECK(b.whisker_high == 5);
    CHECK(b.outliers.empty());
  }
  SUBCASE("zero IQR flags the far point") {
    const std::vector<double> v{1, 1, 1, 1, 100};
    const BoxplotSummary b = boxplot_stats(v);
    CHECK(b.q25 == 1);
    CHECK(b.q75 == 1);
    CHECK(b.whisker_high == 1);
    REQUIRE(b.outliers.size() == 1);
    CHECK(b.outliers[0] == 100);
  }
  SUBCASE("single element") {
    const std::vector<double> v{7};
    const BoxplotSummary b = boxplot_stats(v);
    CHECK(b.median == 7);
    CHECK(b.q25 == 7);
    CHECK(b.q75 == 7);
  }
  SUBCASE("interpolated quartiles") {
    const std::vector<double> v{1, 2, 3, 4};
    const BoxplotSummary b = boxplot_stats(v);
    CHECK(b.q25 == doctest::Approx(1.75));
    CHECK(b.median == doctest::Approx(2.5));
    CHECK(b.q75 == doctest::Approx(3.25));
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(boxplot_stats(std::vector<double>{}), Error);
  }
}

TEST_CASE("boxplot invariants on random data") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal(5.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(20 + trial);
    for (double& x : v) x = normal(rng);
    v.push_back(12.0);  // guaranteed outlier
    const BoxplotSummary b = boxplot_stats(v);
    CHECK(b.q25 <= b.median);
    CHECK(b.median <= b.q75);
    const double iqr = b.q75 - b.q25;
    for (double o : b.outliers) {
      CHECK((o < b.q25 - 1.5 * iqr || o > b.q75 + 1.5 * iqr));
    }
    CHECK(std::find(b.outliers.begin(), b.outliers.end(), 12.0) != b.outliers.end());

    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const BoxplotSummary s = boxplot_stats(shuffled);
    CHECK(s.median == b.median);
    CHECK(s.q25 == b.q25);
    CHECK(s.q75 == b.q75);
    CHECK(s.whisker_low == b.whisker_low);
    CHECK(s.whisker_high == b.whisker_high);
    CHECK(s.outliers == b.outliers);
  }
}

TEST_CASE("summarize examples") {
  SUBCASE("all ties") {
    const auto pairs = make_pairs({4, 5, 6}, {4, 5, 6});
    const PairedReport r = summarize(pairs);
    CHECK(r.pct_a_greater == 0.0);
    CHECK(r.pct_ties == 100.0);
    CHECK(r.test.p == 1.0);
  }
  SUBCASE("symmetric two pairs") {
    const auto pairs = make_pairs({3, 1}, {1, 3});
    const PairedReport r = summarize(pairs);
    CHECK(r.n == 2);
    CHECK(r.pct_a_greater == 50.0);
    CHECK(r.mean_a == 2.0);
    CHECK(r.mean_b == 2.0);
  }
  SUBCASE("too few") {
    const auto pairs = make_pairs({3}, {1});
    CHECK_THROWS_AS(summarize(pairs), Error);
  }
  SUBCASE("delta is exact") {
    const PairScore p{"x", 5.7071, 4.6093};
    CHECK(p.delta() == 5.7071 - 4.6093);
  }
}

TEST_CASE("swapping sides negates t and preserves p") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(3.0, 7.0);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> a(10 + trial), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = unit(rng);
      b[i] = coin(rng) == 0 ? a[i] : unit(rng);  // inject ties
    }
    const auto ab = make_pairs(a, b);
    const auto ba = make_pairs(b, a);
    const PairedReport r = summarize(ab);
    const PairedReport s = summarize(ba);
    CHECK(s.test.t == doctest::Approx(-r.test.t).epsilon(1e-12));
    CHECK(s.test.p == doctest::Approx(r.test.p).epsilon(1e-12));
    CHECK(s.pct_a_greater == doctest::Approx(100.0 - r.pct_a_greater - r.pct_ties));
  }
}
