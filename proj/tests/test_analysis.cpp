#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "analysis.hpp"

using namespace jacobiheat;

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<size_t>(i)] =
        std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (points - 1.0));
  }
  return g;
}

std::vector<double> power_weight(double gamma, int len) {
  std::vector<double> w(static_cast<size_t>(len));
  for (int n = 0; n < len; ++n) w[static_cast<size_t>(n)] = std::pow(n + 1.0, gamma);
  return w;
}

}  // namespace

TEST_CASE("bound constants are finite and stable under range doubling") {
  Model model(JacobiParams(0.0, 0.0));
  const auto base_grid = log_grid(1e-2, 1e2, 40);
  const auto fine_grid = log_grid(1e-2, 1e2, 80);

  SUBCASE("lemma41 size condition") {
    const auto base = estimate_bound_constant(model, BoundKind::Lemma41, 1, 40, base_grid);
    const auto wide = estimate_bound_constant(model, BoundKind::Lemma41, 1, 80, fine_grid);
    CHECK(std::isfinite(base.constant));
    CHECK(base.constant > 0.0);
    const double ratio = wide.constant / base.constant;
    CHECK(ratio < 1.10);
    CHECK(ratio > 0.90);
  }

  SUBCASE("lemma31 with the Chebyshev cross-check") {
    Model cheb(JacobiParams(-0.5, -0.5));
    const auto base = estimate_bound_constant(cheb, BoundKind::Lemma31, 1, 40, base_grid);
    CHECK(std::isfinite(base.constant));
    // recompute the same supremum from the Bessel closed form
    double closed = 0.0;
    for (double t : base_grid) {
      for (int m = 1; m <= 40; ++m) {
        for (int n = 1; n <= 40; ++n) {
          if (m == n) continue;
          const double v = std::abs(cheb_heat_closed_form(t, m, n)) * (m - n) * (m - n) /
                           std::sqrt(t);
          closed = std::max(closed, v);
        }
      }
    }
    CHECK(base.constant == doctest::Approx(closed).epsilon(1e-6));
  }

  SUBCASE("lemma42 difference bound with the local filter") {
    const auto base = estimate_bound_constant(model, BoundKind::Lemma42, 1, 30, base_grid);
    CHECK(std::isfinite(base.constant));
    CHECK(base.constant > 0.0);
    // attaining pair satisfies the filter
    CHECK(2 * base.arg_n >= base.arg_m);
    CHECK(2 * base.arg_n <= 3 * base.arg_m);
  }

  SUBCASE("cz_b1 equals cz_b2 for the symmetric kernel") {
    const auto b1 = estimate_bound_constant(model, BoundKind::CzB1, 1, 24, base_grid);
    const auto b2 = estimate_bound_constant(model, BoundKind::CzB2, 1, 24, base_grid);
    CHECK(b1.constant == doctest::Approx(b2.constant).epsilon(1e-12));
    CHECK(std::isfinite(b1.constant));
  }

  SUBCASE("empty admissible set") {
    CHECK_THROWS_AS(estimate_bound_constant(model, BoundKind::Lemma42, 1, 1, base_grid),
                    std::invalid_argument);
  }

  SUBCASE("standard range is required") {
    Model outside(JacobiParams(-0.6, -0.9));
    CHECK_THROWS_AS(estimate_bound_constant(outside, BoundKind::Lemma41, 1, 10, base_grid),
                    std::invalid_argument);
  }
}

TEST_CASE("uniform polynomial bound") {
  SUBCASE("chebyshev case saturates at sqrt(2/pi)") {
    Model model(JacobiParams(-0.5, -0.5));
    const auto grid = make_unif_x_grid(400, 30);
    const auto report = uniform_pn_bound_constant(model, 50, grid);
    CHECK(report.constant == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(0.02));
    // doubling the degree range moves nothing
    const auto wide = uniform_pn_bound_constant(model, 100, grid);
    CHECK(wide.constant / report.constant < 1.05);
  }

  SUBCASE("n = 0 reduces to the weighted constant") {
    Model model(JacobiParams(0.5, 0.0));
    const auto grid = make_unif_x_grid(100, 10);
    const auto report = uniform_pn_bound_constant(model, 0, grid);
    const double w0 = normalization_w(model.params(), 0);
    double expected = 0.0;
    for (double x : grid) {
      expected = std::max(expected, w0 * std::pow(1.0 - x, 0.5) *
                                        std::pow(1.0 + x, 0.25));
    }
    CHECK(report.constant == doctest::Approx(expected).epsilon(1e-13));
    CHECK(report.arg_n == 0);
  }

  SUBCASE("legendre case is stable under degree doubling") {
    Model model(JacobiParams(0.0, 0.0));
    const auto grid = make_unif_x_grid(300, 25);
    const auto base = uniform_pn_bound_constant(model, 100, grid);
    const auto wide = uniform_pn_bound_constant(model, 200, grid);
    CHECK(std::isfinite(base.constant));
    CHECK(wide.constant / base.constant < 1.05);
  }
}

TEST_CASE("muckenhoupt constants") {
  SUBCASE("unit weight gives exactly one") {
    const std::vector<double> ones(1200, 1.0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      for (int N : {10, 100, 1000}) {
        CHECK(ap_constant(ones, p, N) == 1.0);
      }
    }
  }

  SUBCASE("subcritical power weight stabilizes") {
    const auto w = power_weight(0.3, 2000);
    const double c1 = ap_constant(w, 2.0, 1000);
    const double c2 = ap_constant(w, 2.0, 2000);
    CHECK(c2 / c1 < 1.05);
    CHECK(c1 > 1.0);
  }

  SUBCASE("supercritical power weight keeps growing") {
    const auto w = power_weight(1.5, 4000);
    const double c1 = ap_constant(w, 2.0, 2000);
    const double c2 = ap_constant(w, 2.0, 4000);
    CHECK(c2 / c1 > 1.2);
  }

  SUBCASE("decreasing power weight lies in A_1") {
    const auto w = power_weight(-0.3, 2000);
    const double c1 = ap_constant(w, 1.0, 1000);
    const double c2 = ap_constant(w, 1.0, 2000);
    CHECK(c2 / c1 < 1.05);
  }

  SUBCASE("validation") {
    const std::vector<double> w{1.0, -1.0};
    CHECK_THROWS_AS(ap_constant(w, 2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ap_constant({1.0}, 0.5, 1), std::invalid_argument);
  }
}

TEST_CASE("weighted norms") {
  const std::vector<double> ones(64, 1.0);

  SUBCASE("delta against the unit weight") {
    for (double p : {1.0, 2.0, 3.5}) {
      CHECK(weighted_lp_norm(Sequence::delta(0), ones, p) == doctest::Approx(1.0));
    }
    CHECK(weak_l1_norm(Sequence::delta(0), ones) == doctest::Approx(1.0));
  }

  SUBCASE("level-set scan example") {
    const Sequence f(std::vector<double>{3.0, 1.0, 1.0});
    CHECK(weak_l1_norm(f, ones) == doctest::Approx(3.0));
  }

  SUBCASE("zero sequence") {
    CHECK(weighted_lp_norm(Sequence(), ones, 2.0) == 0.0);
    CHECK(weak_l1_norm(Sequence(), ones) == 0.0);
  }

  SUBCASE("weak norm never exceeds the l1 norm") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> v(1 + rng() % 40);
      for (double& x : v) x = val(rng);
      const Sequence f(std::move(v));
      const auto w = power_weight(0.2, 64);
      CHECK(weak_l1_norm(f, w) <= weighted_lp_norm(f, w, 1.0) + 1e-13);
    }
  }
}

TEST_CASE("maximal inequality experiment") {
  Model model(JacobiParams(0.0, 0.0));
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<Sequence> test_set;
  test_set.emplace_back();  // zero sequence is skipped
  for (int i = 0; i < 12; ++i) {
    std::vector<double> v(1 + rng() % 30);
    for (double& x : v) x = val(rng);
    test_set.emplace_back(std::move(v));
  }

  const int n_max = 180;
  const std::vector<double> ones(n_max + 1, 1.0);
  const auto coarse = log_grid(1e-3, 1e3, 30);
  const auto fine = log_grid(1e-3, 1e3, 60);

  const auto r1 = maximal_inequality_experiment(model, ones, 2.0, test_set, coarse, n_max);
  const auto r2 = maximal_inequality_experiment(model, ones, 2.0, test_set, fine, n_max);
  CHECK(std::isfinite(r1.heat_ratio));
  CHECK(r1.heat_ratio >= 1.0 - 1e-9);  // the t -> 0 end recovers ||f||
  CHECK(r2.heat_ratio / r1.heat_ratio < 1.15);
  CHECK(r2.heat_ratio >= r1.heat_ratio - 1e-12);

  // weak-type ratio at p = 1 stays finite as well
  const auto weak = maximal_inequality_experiment(model, ones, 1.0, test_set, coarse, n_max);
  CHECK(std::isfinite(weak.heat_ratio));
  CHECK(weak.heat_ratio > 0.0);

  // the zero row contributed nothing
  CHECK(r1.heat_arg >= 1);
}

TEST_CASE("poisson ratio dominated by heat ratio on a deep shared grid") {
  Model model(JacobiParams(0.5, 0.2));
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<Sequence> test_set;
  for (int i = 0; i < 6; ++i) {
    std::vector<double> v(1 + rng() % 12);
    for (double& x : v) x = val(rng);
    test_set.emplace_back(std::move(v));
  }
  const int n_max = 150;
  const std::vector<double> ones(n_max + 1, 1.0);
  const auto grid = log_grid(1e-11, 1e3, 70);
  const auto report = maximal_inequality_experiment(model, ones, 2.0, test_set, grid, n_max);
  CHECK(report.poisson_ratio <= report.heat_ratio + 1e-9);
}

TEST_CASE("bound report serializes") {
  Model model(JacobiParams(0.0, 0.0));
  const auto report =
      estimate_bound_constant(model, BoundKind::Lemma41, 1, 12, log_grid(0.1, 10.0, 8));
  const std::string json = report.to_json();
  CHECK(json.find("\"kind\":\"lemma41\"") != std::string::npos);
  CHECK(json.find("\"constant\":") != std::string::npos);
  CHECK(json.find("\"ranges\":") != std::string::npos);
}
