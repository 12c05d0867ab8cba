#include "kernel.hpp"

#include <algorithm>
#include <cmath>

namespace jacobiheat {

namespace {

// Rule sizes are padded to multiples of 64 so nearby requests share one
// cached rule instead of building a fresh eigensolve per integer count.
int padded_nodes(int nc) { return ((nc + 63) / 64) * 64; }

// p_0..p_deg at every node of the rule; layout [node][degree].
std::vector<double> tabulate(const CoefficientTable& table,
                             const QuadratureRule& rule, int deg) {
  const size_t stride = static_cast<size_t>(deg) + 1;
  std::vector<double> values(rule.nodes.size() * stride);
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const std::vector<double> p =
        eval_orthonormal_batch(table, deg, rule.nodes[j]);
    std::copy(p.begin(), p.end(), values.begin() + static_cast<long>(j * stride));
  }
  return values;
}

std::vector<double> block_at(Model& model, double t, int m_max, int n_max,
                             int node_count) {
  const int deg = std::max(m_max, n_max);
  const auto table = model.table(deg);
  const auto rule = model.rule(node_count);
  const std::vector<double> p = tabulate(*table, *rule, deg);
  const size_t stride = static_cast<size_t>(deg) + 1;
  const size_t cols = static_cast<size_t>(n_max) + 1;

  std::vector<double> out(static_cast<size_t>(m_max + 1) * cols, 0.0);
  const bool square = m_max == n_max;
  for (size_t j = 0; j < rule->nodes.size(); ++j) {
    const double wj = rule->weights[j] * std::exp(-(1.0 - rule->nodes[j]) * t);
    const double* pj = p.data() + j * stride;
    for (int m = 0; m <= m_max; ++m) {
      const double pm = wj * pj[m];
      double* row = out.data() + static_cast<size_t>(m) * cols;
      // square grids accumulate the upper triangle only and mirror below,
      // keeping K(m,n) and K(n,m) bit-identical
      for (int n = square ? m : 0; n <= n_max; ++n) row[n] += pm * pj[n];
    }
  }
  if (square) {
    for (int m = 1; m <= m_max; ++m) {
      for (int n = 0; n < m; ++n) {
        out[static_cast<size_t>(m) * cols + static_cast<size_t>(n)] =
            out[static_cast<size_t>(n) * cols + static_cast<size_t>(m)];
      }
    }
  }
  return out;
}

// Truncated matrix-exponential entry used when quadrature would need more
// nodes than the configured cap (very large t): dies off as e^{t(lambda-1)}
// with every eigenvalue strictly below 1.
int spectral_size(const Model& model, double t, int min_index) {
  const double spread = 10.0 * std::sqrt(std::min(t, 1.0e7) + 1.0) + 40.0;
  int n = min_index + 1 + static_cast<int>(std::min(spread, 600.0));
  n = ((n + 127) / 128) * 128;
  return std::min(n, model.options().spectral_cap);
}

double spectral_entry(Model& model, double t, int m, int n) {
  const auto sd = model.spectral(spectral_size(model, t, std::max(m, n)));
  double s = 0.0;
  for (int k = 0; k < sd->n; ++k) {
    const double f = std::exp(t * (sd->values[static_cast<size_t>(k)] - 1.0));
    s += sd->vectors[static_cast<size_t>(m) * static_cast<size_t>(sd->n) + static_cast<size_t>(k)] * f *
         sd->vectors[static_cast<size_t>(n) * static_cast<size_t>(sd->n) + static_cast<size_t>(k)];
  }
  return s;
}

double bessel_i_series(int order, double t) {
  if (t == 0.0) return order == 0 ? 1.0 : 0.0;
  const double half = 0.5 * t;
  double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
  double sum = term;
  const double q = half * half;
  for (int k = 1; k <= 400; ++k) {
    term *= q / (k * (k + static_cast<double>(order)));
    sum += term;
    if (term < sum * 1e-17) return sum;
  }
  throw NonConvergence("modified_bessel_i: series did not converge");
}

double bessel_i_miller(int order, double t) {
  const int start =
      order + static_cast<int>(std::ceil(std::sqrt(140.0 * t))) + 50;
  const double big = 1e250;
  const double scale = 1e-250;
  double next = 0.0;  // I_{k+1} trial
  double cur = 1.0;   // I_k trial; any seed works, the ratio normalizes it out
  double target = 0.0;
  double norm = 0.0;  // accumulates I_0 + 2 sum_{k>=1} I_k in trial units
  for (int k = start; k >= 1; --k) {
    const double prev = next + (2.0 * k / t) * cur;
    next = cur;
    cur = prev;
    if (k - 1 == order) target = cur;  // will hold I_order after loop ends
    norm += 2.0 * next;
    if (std::abs(cur) > big) {
      cur *= scale;
      next *= scale;
      norm *= scale;
      target *= scale;
    }
  }
  norm += cur;  // the I_0 term
  if (order == 0) target = cur;
  return std::exp(t) * target / norm;
}

// Node-doubling driver shared by all quadrature-backed kernel values.
// `relative` rescales the target by the value's magnitude, for integrands
// whose raw size (e.g. e^{xt} factors) exceeds what absolute tolerances
// can express in doubles.
template <typename Eval>
double converge(const Model& model, int first_nodes, double tol, bool relative,
                Eval eval) {
  int nodes = first_nodes;
  double prev = eval(nodes);
  for (int round = 0; round < model.options().kernel_doubling_cap; ++round) {
    nodes *= 2;
    const double cur = eval(nodes);
    const double scale = relative ? std::max(1.0, std::abs(cur)) : 1.0;
    if (std::abs(cur - prev) <= tol * scale) return cur;
    prev = cur;
  }
  throw NonConvergence("kernel quadrature did not converge within the doubling cap");
}

double unnormalized_jacobi(double a, double b, int n, double x) {
  if (n == 0) return 1.0;
  double pm2 = 1.0;
  double pm1 = 0.5 * ((a + b + 2.0) * x + (a - b));
  if (n == 1) return pm1;
  for (int q = 2; q <= n; ++q) {
    const double t = 2.0 * q + a + b;
    const double c1 = 2.0 * q * (q + a + b) * (t - 2.0);
    const double c2 = (t - 1.0) * (t * (t - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (q + a - 1.0) * (q + b - 1.0) * t;
    const double p = (c2 * pm1 - c3 * pm2) / c1;
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

}  // namespace

double heat_kernel(Model& model, double t, int m, int n, double tol) {
  if (t < 0.0) throw std::invalid_argument("heat_kernel: t must be >= 0");
  if (m < 0 || n < 0) throw std::invalid_argument("heat_kernel: indices must be >= 0");
  if (tol <= 0.0) tol = model.options().kernel_tol;

  double cached;
  if (model.kernel_cache_lookup(t, m, n, &cached)) return cached;

  const int first = padded_nodes(node_count_heuristic(t, m + n));
  double value;
  if (2 * first > model.options().max_quadrature_nodes) {
    value = spectral_entry(model, t, m, n);
  } else {
    const auto table = model.table(std::max(m, n));
    value = converge(model, first, tol, false, [&](int nodes) {
      const auto rule = model.rule(nodes);
      double s = 0.0;
      for (size_t j = 0; j < rule->nodes.size(); ++j) {
        const double x = rule->nodes[j];
        const std::vector<double> p =
            eval_orthonormal_batch(*table, std::max(m, n), x);
        s += rule->weights[j] * std::exp(-(1.0 - x) * t) *
             p[static_cast<size_t>(m)] * p[static_cast<size_t>(n)];
      }
      return s;
    });
  }
  model.kernel_cache_store(t, m, n, value);
  return value;
}

std::vector<double> heat_kernel_block(Model& model, double t, int m_max,
                                      int n_max, double tol) {
  if (t < 0.0) throw std::invalid_argument("heat_kernel_block: t must be >= 0");
  if (m_max < 0 || n_max < 0) {
    throw std::invalid_argument("heat_kernel_block: index bounds must be >= 0");
  }
  const bool cacheable = tol <= 0.0;
  if (tol <= 0.0) tol = model.options().kernel_tol;
  if (cacheable) {
    if (auto hit = model.block_cache_lookup(t, m_max, n_max)) return *hit;
  }

  const int first = padded_nodes(node_count_heuristic(t, m_max + n_max));
  if (2 * first > model.options().max_quadrature_nodes) {
    const auto sd = model.spectral(spectral_size(model, t, std::max(m_max, n_max)));
    std::vector<double> out(static_cast<size_t>(m_max + 1) *
                            static_cast<size_t>(n_max + 1));
    std::vector<double> filter(static_cast<size_t>(sd->n));
    for (int k = 0; k < sd->n; ++k) {
      filter[static_cast<size_t>(k)] = std::exp(t * (sd->values[static_cast<size_t>(k)] - 1.0));
    }
    for (int m = 0; m <= m_max; ++m) {
      for (int n = 0; n <= n_max; ++n) {
        double s = 0.0;
        for (int k = 0; k < sd->n; ++k) {
          s += sd->vectors[static_cast<size_t>(m) * static_cast<size_t>(sd->n) + static_cast<size_t>(k)] *
               filter[static_cast<size_t>(k)] *
               sd->vectors[static_cast<size_t>(n) * static_cast<size_t>(sd->n) + static_cast<size_t>(k)];
        }
        out[static_cast<size_t>(m) * static_cast<size_t>(n_max + 1) + static_cast<size_t>(n)] = s;
      }
    }
    if (cacheable) {
      model.block_cache_store(t, m_max, n_max,
                              std::make_shared<const std::vector<double>>(out));
    }
    return out;
  }

  int nodes = first;
  std::vector<double> prev = block_at(model, t, m_max, n_max, nodes);
  for (int round = 0; round < model.options().kernel_doubling_cap; ++round) {
    nodes *= 2;
    std::vector<double> cur = block_at(model, t, m_max, n_max, nodes);
    double diff = 0.0;
    for (size_t i = 0; i < cur.size(); ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
    if (diff <= tol) {
      if (cacheable) {
        model.block_cache_store(t, m_max, n_max,
                                std::make_shared<const std::vector<double>>(cur));
      }
      return cur;
    }
    prev = std::move(cur);
  }
  throw NonConvergence("heat_kernel_block: did not converge within the doubling cap");
}

double modified_bessel_i(int order, double t) {
  if (order < 0) throw std::invalid_argument("modified_bessel_i: order must be >= 0");
  if (!(t >= 0.0) || t > 200.0) {
    throw std::invalid_argument("modified_bessel_i: t must lie in [0, 200]");
  }
  if (t <= 20.0) return bessel_i_series(order, t);
  return bessel_i_miller(order, t);
}

double cheb_heat_closed_form(double t, int m, int n) {
  if (t < 0.0) throw std::invalid_argument("cheb_heat_closed_form: t must be >= 0");
  if (m < 0 || n < 0) {
    throw std::invalid_argument("cheb_heat_closed_form: indices must be >= 0");
  }
  double kappa = 1.0;
  if (m == 0 && n == 0) {
    kappa = 0.5;
  } else if (m == 0 || n == 0) {
    kappa = 1.0 / std::sqrt(2.0);
  }
  return kappa * std::exp(-t) *
         (modified_bessel_i(std::abs(n - m), t) + modified_bessel_i(n + m, t));
}

FrakISpec::FrakISpec(double a_, double b_, double A_, double B_, double alpha_,
                     double beta_, int n_, int m_, double t_)
    : a(a_), b(b_), A(A_), B(B_), alpha(alpha_), beta(beta_), n(n_), m(m_), t(t_) {
  for (double v : {a, b, A, B, alpha, beta}) {
    if (!(v > -1.0)) {
      throw std::invalid_argument("FrakISpec: all exponent parameters must be > -1");
    }
  }
  if (n < 0 || m < 0) throw std::invalid_argument("FrakISpec: degrees must be >= 0");
  if (t < 0.0) throw std::invalid_argument("FrakISpec: t must be >= 0");
}

double frak_i_direct(const FrakISpec& spec, double tol) {
  const JacobiParams measure(spec.alpha, spec.beta);
  int nodes = node_count_heuristic(spec.t, spec.n + spec.m);
  auto eval = [&](int nc) {
    const QuadratureRule rule = gauss_jacobi_rule(measure, nc);
    double s = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
      const double x = rule.nodes[j];
      s += rule.weights[j] * std::exp(-spec.t * (1.0 - x)) *
           unnormalized_jacobi(spec.a, spec.b, spec.n, x) *
           unnormalized_jacobi(spec.A, spec.B, spec.m, x);
    }
    return s;
  };
  double prev = eval(nodes);
  for (int round = 0; round < 5; ++round) {
    nodes *= 2;
    const double cur = eval(nodes);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw NonConvergence("frak_i_direct: did not converge within the doubling cap");
}

double frak_i_recursive(const FrakISpec& spec, double tol) {
  const int n = spec.n, m = spec.m;
  if (n == 0 && m == 0) {
    throw std::domain_error("frak_i_recursive: no identity applies at n = m = 0");
  }
  const double np = n + spec.a + spec.b + 1.0;
  const double mp = m + spec.A + spec.B + 1.0;

  if (n == 0) {
    // reduce in m
    if (mp == 0.0) {
      throw std::domain_error("frak_i_recursive: m + A + B + 1 vanishes");
    }
    const double c = 1.0 / (2.0 * m);
    const double i1 = frak_i_direct(
        FrakISpec(spec.a, spec.b, spec.A + 1, spec.B + 1, spec.alpha + 1,
                  spec.beta + 1, 0, m - 1, spec.t),
        tol);
    const double i2 = frak_i_direct(
        FrakISpec(spec.a, spec.b, spec.A + 1, spec.B + 1, spec.alpha,
                  spec.beta + 1, 0, m - 1, spec.t),
        tol);
    const double i3 = frak_i_direct(
        FrakISpec(spec.a, spec.b, spec.A + 1, spec.B + 1, spec.alpha + 1,
                  spec.beta, 0, m - 1, spec.t),
        tol);
    return c * (spec.t * i1 - (spec.alpha - spec.A) * i2 + (spec.beta - spec.B) * i3);
  }
  if (m == 0) {
    // reduce in n
    if (np == 0.0) {
      throw std::domain_error("frak_i_recursive: n + a + b + 1 vanishes");
    }
    const double c = 1.0 / (2.0 * n);
    const double i1 = frak_i_direct(
        FrakISpec(spec.a + 1, spec.b + 1, spec.A, spec.B, spec.alpha + 1,
                  spec.beta + 1, n - 1, 0, spec.t),
        tol);
    const double i2 = frak_i_direct(
        FrakISpec(spec.a + 1, spec.b + 1, spec.A, spec.B, spec.alpha,
                  spec.beta + 1, n - 1, 0, spec.t),
        tol);
    const double i3 = frak_i_direct(
        FrakISpec(spec.a + 1, spec.b + 1, spec.A, spec.B, spec.alpha + 1,
                  spec.beta, n - 1, 0, spec.t),
        tol);
    return c * (spec.t * i1 - (spec.alpha - spec.a) * i2 + (spec.beta - spec.b) * i3);
  }

  const double gap = n * np - m * mp;
  if (np == 0.0 || mp == 0.0 ||
      std::abs(gap) <= 1e-12 * std::max({1.0, std::abs(n * np), std::abs(m * mp)})) {
    throw std::domain_error("frak_i_recursive: degenerate parameters for case a");
  }
  const double pref = np * mp / (2.0 * gap);
  const double i1 = frak_i_direct(
      FrakISpec(spec.a + 1, spec.b + 1, spec.A, spec.B, spec.alpha + 1,
                spec.beta + 1, n - 1, m, spec.t),
      tol);
  const double i2 = frak_i_direct(
      FrakISpec(spec.a + 1, spec.b + 1, spec.A, spec.B, spec.alpha,
                spec.beta + 1, n - 1, m, spec.t),
      tol);
  const double i3 = frak_i_direct(
      FrakISpec(spec.a + 1, spec.b + 1, spec.A, spec.B, spec.alpha + 1,
                spec.beta, n - 1, m, spec.t),
      tol);
  const double i4 = frak_i_direct(
      FrakISpec(spec.a, spec.b, spec.A + 1, spec.B + 1, spec.alpha + 1,
                spec.beta + 1, n, m - 1, spec.t),
      tol);
  const double i5 = frak_i_direct(
      FrakISpec(spec.a, spec.b, spec.A + 1, spec.B + 1, spec.alpha,
                spec.beta + 1, n, m - 1, spec.t),
      tol);
  const double i6 = frak_i_direct(
      FrakISpec(spec.a, spec.b, spec.A + 1, spec.B + 1, spec.alpha + 1,
                spec.beta, n, m - 1, spec.t),
      tol);
  return pref *
         (spec.t / mp * i1 - (spec.alpha - spec.a) / mp * i2 +
          (spec.beta - spec.b) / mp * i3 - spec.t / np * i4 +
          (spec.alpha - spec.A) / np * i5 - (spec.beta - spec.B) / np * i6);
}

LinearizationRow linearization_coefficients(Model& model, int m, int n) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("linearization_coefficients: indices must be >= 0");
  }
  LinearizationRow row;
  row.m = m;
  row.n = n;
  row.k_min = std::abs(m - n);
  const int k_max = m + n;
  // integrand degree <= 2(m+n); node_count m+n+1 gives exactness 2(m+n)+1
  const int nodes = k_max + 1;
  const auto table = model.table(k_max);
  const auto rule = model.rule(nodes);
  row.coefficients.assign(static_cast<size_t>(k_max - row.k_min) + 1, 0.0);
  for (size_t j = 0; j < rule->nodes.size(); ++j) {
    const std::vector<double> p =
        eval_orthonormal_batch(*table, k_max, rule->nodes[j]);
    const double w = rule->weights[j] * p[static_cast<size_t>(m)] * p[static_cast<size_t>(n)];
    for (int k = row.k_min; k <= k_max; ++k) {
      row.coefficients[static_cast<size_t>(k - row.k_min)] += w * p[static_cast<size_t>(k)];
    }
  }
  return row;
}

double h_t_direct(Model& model, double t, int k, double tol) {
  if (t < 0.0 || k < 0) throw std::invalid_argument("h_t_direct: need t >= 0, k >= 0");
  if (tol <= 0.0) tol = model.options().kernel_tol;
  const auto table = model.table(k);
  const int first = padded_nodes(node_count_heuristic(t, k));
  return converge(model, first, tol, false, [&](int nodes) {
    const auto rule = model.rule(nodes);
    double s = 0.0;
    for (size_t j = 0; j < rule->nodes.size(); ++j) {
      const double x = rule->nodes[j];
      s += rule->weights[j] * std::exp(-(1.0 - x) * t) *
           eval_orthonormal(*table, k, x);
    }
    return s;
  });
}

double h_t_rodrigues(Model& model, double t, int k, double tol) {
  if (t < 0.0 || k < 0) throw std::invalid_argument("h_t_rodrigues: need t >= 0, k >= 0");
  if (tol <= 0.0) tol = model.options().kernel_tol;
  if (t == 0.0 && k >= 1) return 0.0;
  const JacobiParams& p = model.params();
  const double wk = normalization_w(p, k);
  const double log_pref =
      (k > 0 ? k * (std::log(t) - std::log(2.0)) : 0.0) - std::lgamma(k + 1.0);
  const double pref = std::exp(-t + log_pref) * wk;

  const double alpha_k = p.alpha + k;
  const double beta_k = p.beta + k;
  const int first = padded_nodes(node_count_heuristic(t, 0));
  const double integral = converge(model, first, tol, true, [&](int nodes) {
    const auto rule = model.shifted_rule(alpha_k, beta_k, nodes);
    double s = 0.0;
    for (size_t j = 0; j < rule->nodes.size(); ++j) {
      s += rule->weights[j] * std::exp(rule->nodes[j] * t);
    }
    return s;
  });
  return pref * integral;
}

double h_t_coefficient(Model& model, double t, int k, double tol) {
  const double direct = h_t_direct(model, t, k, tol);
  const double rodrigues = h_t_rodrigues(model, t, k, tol);
  const double scale = std::max({1.0, std::abs(direct), std::abs(rodrigues)});
  if (std::abs(direct - rodrigues) > 1e-10 * scale) {
    throw InvariantViolation("h_t_coefficient: direct and Rodrigues routes disagree");
  }
  return direct;
}

Sequence h_t_sequence(Model& model, double t, double cut) {
  const JacobiParams& p = model.params();
  std::vector<double> values;
  values.push_back(h_t_direct(model, t, 0));
  if (t == 0.0) return Sequence(std::move(values));
  for (int k = 1; k < 4096; ++k) {
    const double log_major = std::log(normalization_w(p, k)) +
                             k * std::log(2.0 * t) - std::lgamma(k + 1.0) +
                             log_total_mass(JacobiParams(p.alpha + k, p.beta + k));
    if (k > 2.0 * t && log_major < std::log(cut)) break;
    values.push_back(h_t_direct(model, t, k));
  }
  return Sequence(std::move(values));
}

Sequence translation(Model& model, int n, const Sequence& g) {
  if (n < 0) throw std::invalid_argument("translation: n must be >= 0");
  const int g_sup = g.support();
  if (g_sup < 0) return Sequence();
  std::vector<double> out(static_cast<size_t>(n + g_sup) + 1, 0.0);
  for (int m = std::max(0, n - g_sup); m <= n + g_sup; ++m) {
    const LinearizationRow row = linearization_coefficients(model, m, n);
    double s = 0.0;
    for (int k = row.k_min; k <= std::min(m + n, g_sup); ++k) s += row.c(k) * g[k];
    out[static_cast<size_t>(m)] = s;
  }
  return Sequence(std::move(out));
}

Sequence convolution(Model& model, const Sequence& f, const Sequence& g) {
  const int f_sup = f.support();
  const int g_sup = g.support();
  if (f_sup < 0 || g_sup < 0) return Sequence();
  std::vector<double> out(static_cast<size_t>(f_sup + g_sup) + 1, 0.0);
  for (int n = 0; n <= f_sup + g_sup; ++n) {
    const Sequence tau = translation(model, n, g);
    double s = 0.0;
    for (int m = 0; m <= f_sup; ++m) s += f[m] * tau[m];
    out[static_cast<size_t>(n)] = s;
  }
  return Sequence(std::move(out));
}

}  // namespace jacobiheat
