#include "semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace jacobiheat {

namespace {

void check_time_grid(const std::vector<double>& times, bool allow_zero) {
  if (times.empty()) throw std::invalid_argument("time grid must be non-empty");
  double prev = -1.0;
  for (double t : times) {
    if (!(std::isfinite(t)) || t < 0.0 || (!allow_zero && t == 0.0)) {
      throw std::invalid_argument("time grid entries must be positive and finite");
    }
    if (t <= prev) throw std::invalid_argument("time grid must be strictly increasing");
    prev = t;
  }
}

int checked_truncation(double t, const Sequence& f, int truncation) {
  const int sup = std::max(0, f.support());
  if (truncation < 0) return default_truncation(t, sup);
  if (truncation < sup) {
    throw std::invalid_argument("truncation must cover the support of f");
  }
  return truncation;
}

void contraction_check(const Sequence& f, const Sequence& out) {
  const double in_norm = f.l2_norm();
  if (out.l2_norm() > in_norm + 1e-10 * std::max(1.0, in_norm)) {
    throw InvariantViolation("apply_heat: l2 contraction violated");
  }
}

int spectral_request(const Model& model, double t, int truncation) {
  const double spread = 10.0 * std::sqrt(std::min(t, 1.0e7) + 1.0) + 40.0;
  int n = truncation + 1 + static_cast<int>(std::min(spread, 600.0));
  n = ((n + 127) / 128) * 128;
  return std::min(std::max(n, truncation + 1),
                  std::max(model.options().spectral_cap, truncation + 1));
}

Sequence apply_heat_spectral(Model& model, double t, const Sequence& f,
                             int truncation) {
  const auto sd = model.spectral(spectral_request(model, t, truncation));
  const int N = sd->n;
  const int sup = f.support();
  std::vector<double> coeffs(static_cast<size_t>(N), 0.0);
  for (int k = 0; k < N; ++k) {
    double c = 0.0;
    for (int m = 0; m <= std::min(sup, N - 1); ++m) {
      c += f[m] * sd->vectors[static_cast<size_t>(m) * static_cast<size_t>(N) + static_cast<size_t>(k)];
    }
    coeffs[static_cast<size_t>(k)] = c * std::exp(t * (sd->values[static_cast<size_t>(k)] - 1.0));
  }
  std::vector<double> out(static_cast<size_t>(truncation) + 1, 0.0);
  for (int n = 0; n <= truncation && n < N; ++n) {
    double s = 0.0;
    const double* row = sd->vectors.data() + static_cast<size_t>(n) * static_cast<size_t>(N);
    for (int k = 0; k < N; ++k) s += row[k] * coeffs[static_cast<size_t>(k)];
    out[static_cast<size_t>(n)] = s;
  }
  return Sequence(std::move(out));
}

}  // namespace

int default_truncation(double t, int support) {
  if (t < 0.0) throw std::invalid_argument("default_truncation: t must be >= 0");
  return std::max(0, support) +
         static_cast<int>(std::ceil(10.0 * std::sqrt(t + 1.0))) + 40;
}

Sequence apply_heat(Model& model, double t, const Sequence& f, int truncation) {
  if (t < 0.0) throw std::invalid_argument("apply_heat: t must be >= 0");
  const int trunc = checked_truncation(t, f, truncation);
  if (f.is_zero()) return Sequence(std::vector<double>(static_cast<size_t>(trunc) + 1, 0.0));

  const int sup = f.support();
  const int first = node_count_heuristic(t, sup + trunc);
  Sequence out;
  if (2 * first > model.options().max_quadrature_nodes) {
    out = apply_heat_spectral(model, t, f, trunc);
  } else {
    // round the row count up so repeated applications with nearby supports
    // share one cached block
    const int rows = std::min(((sup + 8) / 8) * 8, trunc);
    const std::vector<double> block =
        heat_kernel_block(model, t, std::max(rows, sup), trunc);
    std::vector<double> v(static_cast<size_t>(trunc) + 1, 0.0);
    for (int m = 0; m <= sup; ++m) {
      const double fm = f[m];
      if (fm == 0.0) continue;
      const double* row = block.data() + static_cast<size_t>(m) * static_cast<size_t>(trunc + 1);
      for (int n = 0; n <= trunc; ++n) v[static_cast<size_t>(n)] += fm * row[n];
    }
    out = Sequence(std::move(v));
  }
  contraction_check(f, out);
  return out;
}

Sequence apply_poisson(Model& model, double t, const Sequence& f,
                       int truncation, int laguerre_nodes) {
  if (t < 0.0) throw std::invalid_argument("apply_poisson: t must be >= 0");
  if (laguerre_nodes <= 0) laguerre_nodes = model.options().poisson_nodes;
  const int trunc = checked_truncation(t, f, truncation);
  if (f.is_zero()) return Sequence(std::vector<double>(static_cast<size_t>(trunc) + 1, 0.0));

  const QuadratureRule rule = gauss_laguerre_rule(-0.5, laguerre_nodes);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

  if (t == 0.0) {
    // every subordinated time collapses to zero; one heat call suffices
    Sequence w0 = apply_heat(model, 0.0, f, trunc);
    double mass = 0.0;
    for (double w : rule.weights) mass += w;
    std::vector<double> v(w0.values());
    for (double& x : v) x *= inv_sqrt_pi * mass;
    return Sequence(std::move(v));
  }

  std::vector<double> acc(static_cast<size_t>(trunc) + 1, 0.0);
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const double s = t * t / (4.0 * rule.nodes[j]);
    const Sequence ws = apply_heat(model, s, f, trunc);
    const double w = inv_sqrt_pi * rule.weights[j];
    for (int n = 0; n <= trunc; ++n) acc[static_cast<size_t>(n)] += w * ws[n];
  }
  return Sequence(std::move(acc));
}

std::vector<double> maximal_heat_profile(Model& model, const Sequence& f,
                                         int n_max,
                                         const std::vector<double>& times) {
  check_time_grid(times, false);
  if (n_max < 0) throw std::invalid_argument("maximal_heat_profile: n_max must be >= 0");
  const int trunc = std::max(n_max, std::max(0, f.support()));
  std::vector<double> sup(static_cast<size_t>(n_max) + 1, 0.0);
  for (double t : times) {
    const Sequence wt = apply_heat(model, t, f, trunc);
    for (int n = 0; n <= n_max; ++n) {
      sup[static_cast<size_t>(n)] = std::max(sup[static_cast<size_t>(n)], std::abs(wt[n]));
    }
  }
  return sup;
}

std::vector<double> maximal_poisson_profile(Model& model, const Sequence& f,
                                            int n_max,
                                            const std::vector<double>& times) {
  check_time_grid(times, false);
  if (n_max < 0) throw std::invalid_argument("maximal_poisson_profile: n_max must be >= 0");
  const int trunc = std::max(n_max, std::max(0, f.support()));
  std::vector<double> sup(static_cast<size_t>(n_max) + 1, 0.0);
  for (double t : times) {
    const Sequence pt = apply_poisson(model, t, f, trunc);
    for (int n = 0; n <= n_max; ++n) {
      sup[static_cast<size_t>(n)] = std::max(sup[static_cast<size_t>(n)], std::abs(pt[n]));
    }
  }
  return sup;
}

double maximal_heat(Model& model, const Sequence& f, int n,
                    const std::vector<double>& times) {
  return maximal_heat_profile(model, f, n, times)[static_cast<size_t>(n)];
}

double maximal_poisson(Model& model, const Sequence& f, int n,
                       const std::vector<double>& times) {
  return maximal_poisson_profile(model, f, n, times)[static_cast<size_t>(n)];
}

GeneralJacobiMatrix::GeneralJacobiMatrix(std::vector<double> a_,
                                         std::vector<double> b_, double s)
    : a(std::move(a_)), b(std::move(b_)), s_plus(std::max(s, 0.0)) {
  if (a.size() + 1 != b.size()) {
    throw std::invalid_argument("GeneralJacobiMatrix: need one fewer off-diagonal entry");
  }
  for (double x : a) {
    if (!(x > 0.0)) {
      throw std::invalid_argument("GeneralJacobiMatrix: off-diagonal entries must be > 0");
    }
  }
  for (double x : b) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("GeneralJacobiMatrix: non-finite diagonal entry");
    }
  }
}

namespace {

std::vector<double> exponential_from_eigen(const std::vector<double>& values,
                                           const std::vector<double>& vectors,
                                           int N, double t, double s_plus) {
  std::vector<double> filter(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) {
    filter[static_cast<size_t>(k)] = std::exp(t * (values[static_cast<size_t>(k)] - s_plus));
  }
  std::vector<double> out(static_cast<size_t>(N) * static_cast<size_t>(N));
  for (int m = 0; m < N; ++m) {
    const double* qm = vectors.data() + static_cast<size_t>(m) * static_cast<size_t>(N);
    for (int n = m; n < N; ++n) {
      const double* qn = vectors.data() + static_cast<size_t>(n) * static_cast<size_t>(N);
      double s = 0.0;
      for (int k = 0; k < N; ++k) s += qm[k] * filter[static_cast<size_t>(k)] * qn[k];
      out[static_cast<size_t>(m) * static_cast<size_t>(N) + static_cast<size_t>(n)] = s;
      out[static_cast<size_t>(n) * static_cast<size_t>(N) + static_cast<size_t>(m)] = s;
    }
  }
  return out;
}

}  // namespace

std::vector<double> matrix_exponential_kernel(const GeneralJacobiMatrix& J,
                                              double t, int N) {
  if (t < 0.0) throw std::invalid_argument("matrix_exponential_kernel: t must be >= 0");
  if (N < 1 || N > J.cutoff()) {
    throw std::invalid_argument("matrix_exponential_kernel: N must lie in [1, cutoff]");
  }
  std::vector<double> diag(J.b.begin(), J.b.begin() + N);
  std::vector<double> off(J.a.begin(), J.a.begin() + (N - 1));
  EigenDecomposition eig = tridiagonal_eigen(diag, off, EigenMode::FullVectors);
  return exponential_from_eigen(eig.values, eig.vectors, N, t, J.s_plus);
}

std::vector<double> matrix_exponential_kernel(Model& model, double t, int N) {
  if (t < 0.0) throw std::invalid_argument("matrix_exponential_kernel: t must be >= 0");
  if (N < 1) throw std::invalid_argument("matrix_exponential_kernel: N must be >= 1");
  const auto sd = model.spectral(N);
  return exponential_from_eigen(sd->values, sd->vectors, N, t, 1.0);
}

EvolutionTrace evolve_ivp(Model& model, const Sequence& f,
                          const std::vector<double>& times, int truncation) {
  check_time_grid(times, true);
  EvolutionTrace trace;
  trace.times = times;
  const int trunc = (truncation >= 0)
                        ? truncation
                        : default_truncation(times.back(), f.support());
  trace.states.reserve(times.size());
  trace.energies.reserve(times.size());
  for (double t : times) {
    Sequence u = apply_heat(model, t, f, trunc);
    const double norm = u.l2_norm();
    trace.energies.push_back(0.5 * norm * norm);
    trace.states.push_back(std::move(u));
  }
  const double slack = 1e-10 * std::max(1.0, trace.energies.front());
  for (size_t i = 1; i < trace.energies.size(); ++i) {
    if (trace.energies[i] > trace.energies[i - 1] + slack) {
      throw InvariantViolation("evolve_ivp: energy increased along the trace");
    }
  }
  return trace;
}

double pde_residual(Model& model, const Sequence& f, double t, double h,
                    int truncation) {
  if (h <= 0.0) throw std::invalid_argument("pde_residual: h must be > 0");
  const int trunc = (truncation >= 0) ? truncation
                                      : default_truncation(t + h, f.support());
  const Sequence u = apply_heat(model, t, f, trunc);
  const Sequence u_next = apply_heat(model, t + h, f, trunc);
  const auto table = model.table(trunc + 2);
  const Sequence ju = apply_jacobi(*table, u, true);
  double s = 0.0;
  for (int n = 0; n <= trunc + 1; ++n) {
    const double r = (u_next[n] - u[n]) / h - ju[n];
    s += r * r;
  }
  return std::sqrt(s);
}

double chapman_kolmogorov_residual(Model& model, double t1, double t2, int n,
                                   int j, int truncation) {
  if (t1 < 0.0 || t2 < 0.0) {
    throw std::invalid_argument("chapman_kolmogorov_residual: times must be >= 0");
  }
  if (n < 0 || j < 0 || truncation < std::max(n, j)) {
    throw std::invalid_argument("chapman_kolmogorov_residual: bad indices");
  }
  const Sequence col_n = apply_heat(model, t1, Sequence::delta(n), truncation);
  const Sequence col_j = apply_heat(model, t2, Sequence::delta(j), truncation);
  double s = 0.0;
  for (int m = 0; m <= truncation; ++m) s += col_n[m] * col_j[m];
  return std::abs(s - heat_kernel(model, t1 + t2, n, j));
}

SpectralEvaluator::SpectralEvaluator(Model& model, int size, int laguerre_nodes)
    : sd_(model.spectral(size)),
      laguerre_(gauss_laguerre_rule(
          -0.5, laguerre_nodes > 0 ? laguerre_nodes
                                   : model.options().poisson_nodes)) {}

std::vector<double> SpectralEvaluator::coefficients(const Sequence& f) const {
  const int N = sd_->n;
  const int sup = std::min(f.support(), N - 1);
  std::vector<double> coeffs(static_cast<size_t>(N), 0.0);
  for (int k = 0; k < N; ++k) {
    double c = 0.0;
    for (int m = 0; m <= sup; ++m) {
      c += f[m] * sd_->vectors[static_cast<size_t>(m) * static_cast<size_t>(N) + static_cast<size_t>(k)];
    }
    coeffs[static_cast<size_t>(k)] = c;
  }
  return coeffs;
}

std::vector<double> SpectralEvaluator::apply_filter(
    const std::vector<double>& coeffs, const std::vector<double>& filter,
    int n_max) const {
  const int N = sd_->n;
  std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
  for (int n = 0; n <= n_max && n < N; ++n) {
    const double* row = sd_->vectors.data() + static_cast<size_t>(n) * static_cast<size_t>(N);
    double s = 0.0;
    for (int k = 0; k < N; ++k) s += row[k] * filter[static_cast<size_t>(k)] * coeffs[static_cast<size_t>(k)];
    out[static_cast<size_t>(n)] = s;
  }
  return out;
}

std::vector<double> SpectralEvaluator::heat(const std::vector<double>& coeffs,
                                            double t, int n_max) const {
  const int N = sd_->n;
  std::vector<double> filter(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) {
    filter[static_cast<size_t>(k)] = std::exp(t * (sd_->values[static_cast<size_t>(k)] - 1.0));
  }
  return apply_filter(coeffs, filter, n_max);
}

std::vector<double> SpectralEvaluator::poisson(const std::vector<double>& coeffs,
                                               double t, int n_max) const {
  const int N = sd_->n;
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  std::vector<double> filter(static_cast<size_t>(N), 0.0);
  for (int k = 0; k < N; ++k) {
    const double lam = sd_->values[static_cast<size_t>(k)] - 1.0;
    double s = 0.0;
    for (size_t j = 0; j < laguerre_.nodes.size(); ++j) {
      s += laguerre_.weights[j] * std::exp(lam * t * t / (4.0 * laguerre_.nodes[j]));
    }
    filter[static_cast<size_t>(k)] = inv_sqrt_pi * s;
  }
  return apply_filter(coeffs, filter, n_max);
}

}  // namespace jacobiheat
