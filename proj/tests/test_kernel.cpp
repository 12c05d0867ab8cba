#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kernel.hpp"

using namespace jacobiheat;

namespace {

// Defining integral (1/pi) int_0^pi e^{t cos th} cos(m th) d th on a
// Gauss-Legendre rule mapped to [0, pi]; independent of the series and
// Miller paths under test.
double bessel_integral_oracle(int order, double t) {
  const auto rule = gauss_jacobi_rule(JacobiParams(0.0, 0.0), 2200);
  double s = 0.0;
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const double theta = 0.5 * std::numbers::pi * (rule.nodes[j] + 1.0);
    s += rule.weights[j] * std::exp(t * std::cos(theta)) * std::cos(order * theta);
  }
  return s * 0.5 * std::numbers::pi / std::numbers::pi;
}

}  // namespace

TEST_CASE("heat kernel at t = 0 is the Kronecker delta") {
  for (const JacobiParams p : {JacobiParams(0.0, 0.0), JacobiParams(0.5, 0.2),
                               JacobiParams(-0.5, -0.5), JacobiParams(2.0, 0.3)}) {
    Model model(p);
    const auto grid = heat_kernel_block(model, 0.0, 30, 30);
    for (int m = 0; m <= 30; ++m) {
      for (int n = 0; n <= 30; ++n) {
        const double expected = (m == n) ? 1.0 : 0.0;
        CHECK(std::abs(grid[static_cast<size_t>(m) * 31 + static_cast<size_t>(n)] - expected) < 1e-11);
      }
    }
  }
}

TEST_CASE("heat kernel symmetry is exact through the cache") {
  Model model(JacobiParams(0.5, 0.2));
  const double a = heat_kernel(model, 3.0, 4, 9);
  const double b = heat_kernel(model, 3.0, 9, 4);
  CHECK(a == b);  // bit-for-bit via the symmetric cache key
  CHECK(std::abs(a) <= 1.0 + 1e-12);
}

TEST_CASE("heat kernel magnitude bound and convergence flag") {
  Model model(JacobiParams(0.3, 0.1));
  for (double t : {0.1, 1.0, 10.0}) {
    for (int m : {0, 3, 7}) {
      for (int n : {0, 2, 9}) {
        CHECK(std::abs(heat_kernel(model, t, m, n)) <= 1.0 + 1e-12);
      }
    }
  }
  // doubled-node recomputation stays put (self-convergence)
  const double v1 = heat_kernel(model, 5.0, 3, 7, 1e-12);
  const int nominal = node_count_heuristic(5.0, 10);
  const auto table = model.table(7);
  const auto rule = model.rule(4 * nominal);
  double v2 = 0.0;
  for (size_t j = 0; j < rule->nodes.size(); ++j) {
    const double x = rule->nodes[j];
    const auto pv = eval_orthonormal_batch(*table, 7, x);
    v2 += rule->weights[j] * std::exp(-(1.0 - x) * 5.0) * pv[3] * pv[7];
  }
  CHECK(std::abs(v1 - v2) < 1e-12);
}

TEST_CASE("modified Bessel I") {
  CHECK(modified_bessel_i(0, 0.0) == 1.0);
  CHECK(modified_bessel_i(3, 0.0) == 0.0);
  CHECK(modified_bessel_i(0, 1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-13));

  SUBCASE("series and Miller branches against the defining integral") {
    // the integral oracle carries absolute error ~ e^t * eps from its
    // integrand scale, so the comparison uses a mixed tolerance
    for (int order : {0, 1, 5, 17, 30}) {
      for (double t : {0.5, 5.0, 19.5, 21.0, 50.0, 120.0, 200.0}) {
        const double expected = bessel_integral_oracle(order, t);
        const double got = modified_bessel_i(order, t);
        const double slack =
            std::max(1e-12 * std::abs(expected), 1e-13 * std::exp(t));
        CHECK(std::abs(got - expected) <= slack);
      }
    }
  }

  SUBCASE("Miller branch against an independent series evaluation") {
    auto series = [](int order, double t) {
      double term = std::exp(order * std::log(0.5 * t) - std::lgamma(order + 1.0));
      double sum = term;
      for (int k = 1; k < 600; ++k) {
        term *= 0.25 * t * t / (k * (k + static_cast<double>(order)));
        sum += term;
        if (term < sum * 1e-18) break;
      }
      return sum;
    };
    for (int order : {0, 1, 4, 11, 26}) {
      for (double t : {20.5, 24.0, 30.0}) {
        CHECK(modified_bessel_i(order, t) ==
              doctest::Approx(series(order, t)).epsilon(1e-13));
      }
    }
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(modified_bessel_i(0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(modified_bessel_i(0, 200.5), std::invalid_argument);
    CHECK_THROWS_AS(modified_bessel_i(-1, 1.0), std::invalid_argument);
  }
}

TEST_CASE("chebyshev closed form") {
  SUBCASE("t = 0 rows") {
    CHECK(cheb_heat_closed_form(0.0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cheb_heat_closed_form(0.0, 0, 2) == doctest::Approx(0.0));
    CHECK(cheb_heat_closed_form(0.0, 4, 4) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("matches the quadrature kernel after normalization") {
    Model model(JacobiParams(-0.5, -0.5));
    CHECK(cheb_heat_closed_form(1.5, 2, 2) ==
          doctest::Approx(heat_kernel(model, 1.5, 2, 2)).epsilon(1e-9));
    CHECK(cheb_heat_closed_form(2.0, 1, 3) ==
          doctest::Approx(heat_kernel(model, 2.0, 1, 3)).epsilon(1e-9));
    for (double t : {0.1, 1.0, 7.5, 20.0}) {
      for (int m : {0, 1, 2, 9, 15}) {
        for (int n : {0, 3, 15}) {
          const double closed = cheb_heat_closed_form(t, m, n);
          const double quad = heat_kernel(model, t, m, n);
          CHECK(std::abs(closed - quad) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("frak_i direct values at t = 0") {
  SUBCASE("orthogonality") {
    const FrakISpec spec(0.7, -0.2, 0.7, -0.2, 0.7, -0.2, 2, 5, 0.0);
    CHECK(std::abs(frak_i_direct(spec)) < 1e-13);
  }
  SUBCASE("diagonal is the reciprocal squared normalization") {
    const JacobiParams p(0.7, -0.2);
    const FrakISpec spec(0.7, -0.2, 0.7, -0.2, 0.7, -0.2, 3, 3, 0.0);
    const double w3 = normalization_w(p, 3);
    CHECK(frak_i_direct(spec) == doctest::Approx(1.0 / (w3 * w3)).epsilon(1e-12));
  }
  SUBCASE("constant polynomials give the total mass") {
    const FrakISpec spec(1.4, 0.3, -0.6, 2.0, 0.25, -0.75, 0, 0, 0.0);
    CHECK(frak_i_direct(spec) ==
          doctest::Approx(total_mass(JacobiParams(0.25, -0.75))).epsilon(1e-12));
  }
}

TEST_CASE("frak_i recursion agrees with direct evaluation") {
  SUBCASE("pinned cases") {
    // case b
    CHECK(frak_i_recursive(FrakISpec(0, 0, 0, 0, 0, 0, 0, 3, 1.0)) ==
          doctest::Approx(frak_i_direct(FrakISpec(0, 0, 0, 0, 0, 0, 0, 3, 1.0)))
              .epsilon(1e-9));
    // case c
    CHECK(frak_i_recursive(FrakISpec(0, 0, 0, 0, 0, 0, 3, 0, 1.0)) ==
          doctest::Approx(frak_i_direct(FrakISpec(0, 0, 0, 0, 0, 0, 3, 0, 1.0)))
              .epsilon(1e-9));
    // case a
    const FrakISpec a(0.5, -0.25, 0.5, -0.25, 0.5, -0.25, 2, 5, 2.0);
    CHECK(frak_i_recursive(a) == doctest::Approx(frak_i_direct(a)).epsilon(1e-9));
  }

  SUBCASE("random sweep per case") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> par(-0.9, 2.0);
    std::uniform_real_distribution<double> time(0.0, 5.0);
    auto random_spec = [&](int n, int m) {
      return FrakISpec(par(rng), par(rng), par(rng), par(rng), par(rng),
                       par(rng), n, m, time(rng));
    };
    int done_a = 0, done_b = 0, done_c = 0;
    while (done_a < 50 || done_b < 50 || done_c < 50) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const int m = 1 + static_cast<int>(rng() % 6);
      if (done_b < 50) {
        const auto spec = random_spec(0, m);
        const double lhs = frak_i_recursive(spec);
        const double rhs = frak_i_direct(spec);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        ++done_b;
      }
      if (done_c < 50) {
        const auto spec = random_spec(n, 0);
        const double lhs = frak_i_recursive(spec);
        const double rhs = frak_i_direct(spec);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        ++done_c;
      }
      if (done_a < 50) {
        try {
          const auto spec = random_spec(n, m);
          const double lhs = frak_i_recursive(spec);
          const double rhs = frak_i_direct(spec);
          CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
          ++done_a;
        } catch (const std::domain_error&) {
          // degenerate draw; resample
        }
      }
    }
  }

  SUBCASE("degeneracies are rejected") {
    CHECK_THROWS_AS(frak_i_recursive(FrakISpec(0, 0, 0, 0, 0, 0, 0, 0, 1.0)),
                    std::domain_error);
    // same degree and same parameters: n(n+a+b+1) == m(m+A+B+1)
    CHECK_THROWS_AS(frak_i_recursive(FrakISpec(0.5, 0.5, 0.5, 0.5, 0, 0, 4, 4, 1.0)),
                    std::domain_error);
  }
}

TEST_CASE("linearization rows") {
  SUBCASE("m = 0 collapses to a single band") {
    Model model(JacobiParams(0.7, 0.2));
    for (int n : {0, 1, 5}) {
      const auto row = linearization_coefficients(model, 0, n);
      CHECK(row.k_min == n);
      CHECK(row.coefficients.size() == 1);
      CHECK(row.c(n) == doctest::Approx(normalization_w(model.params(), 0)).epsilon(1e-13));
    }
  }

  SUBCASE("reconstruction at fixed points") {
    Model model(JacobiParams(0.0, 0.0));
    const auto row = linearization_coefficients(model, 1, 1);
    const auto table = model.table(2);
    for (double x : {-1.0, 0.0, 1.0}) {
      double recon = 0.0;
      for (int k = row.k_min; k <= 2; ++k) {
        recon += row.c(k) * eval_orthonormal(*table, k, x);
      }
      const double p1 = eval_orthonormal(*table, 1, x);
      CHECK(std::abs(recon - p1 * p1) < 1e-12);
    }
  }

  SUBCASE("reconstruction at random points") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> xs(-1.0, 1.0);
    Model model(JacobiParams(1.2, 0.4));
    for (int trial = 0; trial < 10; ++trial) {
      const int m = static_cast<int>(rng() % 9);
      const int n = static_cast<int>(rng() % 9);
      const auto row = linearization_coefficients(model, m, n);
      const auto table = model.table(m + n);
      const double x = xs(rng);
      const auto pv = eval_orthonormal_batch(*table, m + n, x);
      double recon = 0.0;
      for (int k = row.k_min; k <= m + n; ++k) recon += row.c(k) * pv[static_cast<size_t>(k)];
      CHECK(std::abs(recon - pv[static_cast<size_t>(m)] * pv[static_cast<size_t>(n)]) < 1e-9);
    }
  }

  SUBCASE("coefficients vanish outside the band") {
    Model model(JacobiParams(0.4, -0.3));
    const int m = 4, n = 2;
    const auto table = model.table(12);
    const auto rule = model.rule(12);
    for (int k : {0, 1, 7, 9}) {  // outside [2, 6]
      double c = 0.0;
      for (size_t j = 0; j < rule->nodes.size(); ++j) {
        const auto pv = eval_orthonormal_batch(*table, 9, rule->nodes[j]);
        c += rule->weights[j] * pv[static_cast<size_t>(m)] * pv[static_cast<size_t>(n)] * pv[static_cast<size_t>(k)];
      }
      CHECK(std::abs(c) < 1e-12);
    }
  }

  SUBCASE("negative coefficient outside region V") {
    Model model(JacobiParams(-0.6, -0.9));
    CHECK_FALSE(region_v_membership(model.params()));
    double most_negative = 0.0;
    for (int m = 0; m <= 12; ++m) {
      for (int n = 0; n <= m; ++n) {
        const auto row = linearization_coefficients(model, m, n);
        for (double c : row.coefficients) most_negative = std::min(most_negative, c);
      }
    }
    CHECK(most_negative < -1e-10);
  }

  SUBCASE("all coefficients non-negative inside region V") {
    Model model(JacobiParams(0.5, 0.2));
    CHECK(region_v_membership(model.params()));
    for (int m = 0; m <= 10; ++m) {
      for (int n = 0; n <= m; ++n) {
        const auto row = linearization_coefficients(model, m, n);
        for (double c : row.coefficients) CHECK(c >= -1e-12);
      }
    }
  }
}

TEST_CASE("h_t coefficients") {
  SUBCASE("t = 0 values") {
    Model model(JacobiParams(0.8, -0.3));
    const JacobiParams& p = model.params();
    const double expected =
        std::pow(2.0, 0.5 * (p.sum() + 1.0)) *
        std::sqrt(std::exp(std::lgamma(p.alpha + 1.0) + std::lgamma(p.beta + 1.0) -
                           std::lgamma(p.sum() + 2.0)));
    CHECK(h_t_coefficient(model, 0.0, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(h_t_coefficient(model, 0.0, 1)) < 1e-13);
    CHECK(std::abs(h_t_coefficient(model, 0.0, 4)) < 1e-13);
  }

  SUBCASE("dual formulas agree and are non-negative in the positive regime") {
    Model model(JacobiParams(0.3, 0.1));
    for (double t : {0.5, 4.0, 25.0}) {
      for (int k : {0, 1, 2, 5, 11}) {
        const double direct = h_t_direct(model, t, k);
        const double rodrigues = h_t_rodrigues(model, t, k);
        CHECK(std::abs(direct - rodrigues) <=
              1e-10 * std::max({1.0, std::abs(direct), std::abs(rodrigues)}));
        CHECK(direct >= -1e-13);
      }
    }
  }

  SUBCASE("sequence truncation matches pointwise values") {
    Model model(JacobiParams(0.5, 0.5));
    const Sequence h = h_t_sequence(model, 1.0);
    CHECK(h.size() >= 4);
    for (int k = 0; k < std::min(h.size(), 8); ++k) {
      CHECK(h[k] == doctest::Approx(h_t_direct(model, 1.0, k)).epsilon(1e-11));
    }
    CHECK(std::abs(h[h.size() - 1]) < 1e-13);
  }
}

TEST_CASE("translation and convolution") {
  SUBCASE("translation by zero scales by w_0") {
    Model model(JacobiParams(0.2, 0.1));
    const double w0 = normalization_w(model.params(), 0);
    const Sequence g(std::vector<double>{0.3, -1.2, 0.5});
    const Sequence tau = translation(model, 0, g);
    for (int m = 0; m < 3; ++m) CHECK(tau[m] == doctest::Approx(w0 * g[m]).epsilon(1e-12));
  }

  SUBCASE("convolution with a delta picks translated values") {
    Model model(JacobiParams(0.4, 0.4));
    const Sequence g(std::vector<double>{1.0, 0.25, -0.5, 0.125});
    const Sequence conv = convolution(model, Sequence::delta(0), g);
    for (int n = 0; n < conv.size(); ++n) {
      const Sequence tau = translation(model, n, g);
      CHECK(conv[n] == doctest::Approx(tau[0]).epsilon(1e-12));
    }
  }

  SUBCASE("heat kernel equals the translated h_t") {
    Model model(JacobiParams(0.5, 0.5));
    const Sequence h = h_t_sequence(model, 1.0);
    const Sequence tau = translation(model, 3, h);
    CHECK(tau[2] == doctest::Approx(heat_kernel(model, 1.0, 2, 3)).epsilon(1e-9));

    Model legendre(JacobiParams(0.0, 0.0));
    const Sequence h2 = h_t_sequence(legendre, 2.5);
    const Sequence tau2 = translation(legendre, 1, h2);
    for (int m : {0, 1, 2, 4}) {
      CHECK(std::abs(tau2[m] - heat_kernel(legendre, 2.5, m, 1)) < 1e-9);
    }
  }
}

TEST_CASE("kernel positivity in the Gasper regime") {
  // five parameter pairs with alpha >= beta >= -1/2
  const JacobiParams pairs[] = {JacobiParams(-0.5, -0.5), JacobiParams(0.0, 0.0),
                                JacobiParams(0.5, 0.5), JacobiParams(1.0, 0.5),
                                JacobiParams(2.0, 0.3)};
  for (const auto& p : pairs) {
    Model model(p);
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      const auto grid = heat_kernel_block(model, t, 25, 25);
      for (double v : grid) CHECK(v >= -1e-12);
    }
  }
}

TEST_CASE("empirical decay of off-diagonal kernel values") {
  Model model(JacobiParams(0.0, 0.0));
  double constant = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    const auto grid = heat_kernel_block(model, t, 20, 20);
    for (int m = 0; m <= 20; ++m) {
      for (int n = 0; n <= 20; ++n) {
        if (m == n) continue;
        const double ratio = std::abs(grid[static_cast<size_t>(m) * 21 + static_cast<size_t>(n)]) *
                             (m - n) * (m - n) / std::sqrt(t);
        constant = std::max(constant, ratio);
      }
    }
  }
  CHECK(std::isfinite(constant));
  CHECK(constant > 0.0);
}
