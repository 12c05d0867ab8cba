#include "jacobiheat/jacobiheat.h"

#include <cstring>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "kernel.hpp"
#include "model.hpp"
#include "semigroup.hpp"

namespace {

thread_local std::string g_last_error;

jacobiheat::Sequence to_sequence(const double* data, size_t len) {
  if (len > 0 && data == nullptr) {
    throw std::invalid_argument("null sequence pointer");
  }
  return jacobiheat::Sequence(std::vector<double>(data, data + len));
}

template <typename Fn>
jh_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return JH_OK;
  } catch (const jacobiheat::NonConvergence& e) {
    g_last_error = e.what();
    return JH_ERR_NO_CONVERGENCE;
  } catch (const jacobiheat::InvariantViolation& e) {
    g_last_error = e.what();
    return JH_ERR_INVARIANT;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return JH_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return JH_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JH_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

struct jh_model {
  jacobiheat::Model impl;
};

extern "C" {

const char* jh_version(void) { return "0.1.0"; }

const char* jh_last_error(void) { return g_last_error.c_str(); }

jh_status jh_model_create(double alpha, double beta, jh_model** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new jh_model{jacobiheat::Model(jacobiheat::JacobiParams(alpha, beta))};
  });
}

void jh_model_destroy(jh_model* model) { delete model; }

jh_status jh_model_params(const jh_model* model, double* alpha, double* beta) {
  return guarded([&] {
    require(model && alpha && beta, "null pointer");
    *alpha = model->impl.params().alpha;
    *beta = model->impl.params().beta;
  });
}

jh_status jh_model_standard_range(const jh_model* model, int* flag) {
  return guarded([&] {
    require(model && flag, "null pointer");
    *flag = model->impl.params().standard_range() ? 1 : 0;
  });
}

jh_status jh_set_kernel_tolerance(jh_model* model, double tol) {
  return guarded([&] {
    require(model != nullptr, "null model");
    require(tol > 0.0, "tolerance must be > 0");
    model->impl.options().kernel_tol = tol;
  });
}

jh_status jh_set_poisson_nodes(jh_model* model, int nodes) {
  return guarded([&] {
    require(model != nullptr, "null model");
    require(nodes >= 1, "node count must be >= 1");
    model->impl.options().poisson_nodes = nodes;
  });
}

jh_status jh_recurrence_coefficients(jh_model* model, int n, double* a,
                                     double* b) {
  return guarded([&] {
    require(model && a && b, "null pointer");
    *a = jacobiheat::recurrence_a(model->impl.params(), n);
    *b = jacobiheat::recurrence_b(model->impl.params(), n);
  });
}

jh_status jh_normalization_constant(jh_model* model, int n, double* w) {
  return guarded([&] {
    require(model && w, "null pointer");
    *w = jacobiheat::normalization_w(model->impl.params(), n);
  });
}

jh_status jh_factorization_coefficients(jh_model* model, int n, double* d,
                                        double* e) {
  return guarded([&] {
    require(model && d && e, "null pointer");
    *d = jacobiheat::decomposition_d(model->impl.params(), n);
    *e = jacobiheat::decomposition_e(model->impl.params(), n);
  });
}

jh_status jh_total_mass(jh_model* model, double* mass) {
  return guarded([&] {
    require(model && mass, "null pointer");
    *mass = jacobiheat::total_mass(model->impl.params());
  });
}

jh_status jh_region_v(jh_model* model, int* in_v, int* simple) {
  return guarded([&] {
    require(model && in_v && simple, "null pointer");
    *in_v = jacobiheat::region_v_membership(model->impl.params()) ? 1 : 0;
    *simple = jacobiheat::gasper_simple(model->impl.params()) ? 1 : 0;
  });
}

jh_status jh_eval_orthonormal(jh_model* model, int n, double x, double* value) {
  return guarded([&] {
    require(model && value, "null pointer");
    require(n >= 0, "n must be >= 0");
    *value = jacobiheat::eval_orthonormal(*model->impl.table(n), n, x);
  });
}

jh_status jh_eval_orthonormal_batch(jh_model* model, int n_max, double x,
                                    double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    require(n_max >= 0, "n_max must be >= 0");
    const auto values =
        jacobiheat::eval_orthonormal_batch(*model->impl.table(n_max), n_max, x);
    std::memcpy(out, values.data(), values.size() * sizeof(double));
  });
}

jh_status jh_coefficient_table_json(jh_model* model, int cutoff, char** out) {
  return guarded([&] {
    require(model && out, "null pointer");
    require(cutoff >= 0, "cutoff must be >= 0");
    const jacobiheat::CoefficientTable table(model->impl.params(), cutoff);
    const std::string json = table.to_json();
    *out = new char[json.size() + 1];
    std::memcpy(*out, json.c_str(), json.size() + 1);
  });
}

void jh_string_free(char* s) { delete[] s; }

jh_status jh_apply_jacobi(jh_model* model, const double* f, size_t len,
                          int shifted, double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto seq = to_sequence(f, len);
    const auto result = jacobiheat::apply_jacobi(
        *model->impl.table(static_cast<int>(len) + 1), seq, shifted != 0);
    for (size_t n = 0; n <= len; ++n) out[n] = result[static_cast<int>(n)];
  });
}

jh_status jh_apply_delta(jh_model* model, const double* f, size_t len,
                         double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto seq = to_sequence(f, len);
    const auto result = jacobiheat::apply_delta(
        *model->impl.table(static_cast<int>(len) + 1), seq);
    for (size_t n = 0; n < len; ++n) out[n] = result[static_cast<int>(n)];
  });
}

jh_status jh_apply_delta_star(jh_model* model, const double* f, size_t len,
                              double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto seq = to_sequence(f, len);
    const auto result = jacobiheat::apply_delta_star(
        *model->impl.table(static_cast<int>(len) + 1), seq);
    for (size_t n = 0; n <= len; ++n) out[n] = result[static_cast<int>(n)];
  });
}

jh_status jh_quadrature_rule(jh_model* model, int node_count, double* nodes,
                             double* weights) {
  return guarded([&] {
    require(model && nodes && weights, "null pointer");
    const auto rule = model->impl.rule(node_count);
    std::memcpy(nodes, rule->nodes.data(), rule->nodes.size() * sizeof(double));
    std::memcpy(weights, rule->weights.data(),
                rule->weights.size() * sizeof(double));
  });
}

int jh_node_count_heuristic(double t, int max_degree) {
  try {
    return jacobiheat::node_count_heuristic(t, max_degree);
  } catch (...) {
    return -1;
  }
}

jh_status jh_heat_kernel(jh_model* model, double t, int m, int n, double tol,
                         double* value) {
  return guarded([&] {
    require(model && value, "null pointer");
    *value = jacobiheat::heat_kernel(model->impl, t, m, n, tol);
  });
}

jh_status jh_heat_kernel_grid(jh_model* model, double t, int m_max, double tol,
                              double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto block =
        jacobiheat::heat_kernel_block(model->impl, t, m_max, m_max, tol);
    std::memcpy(out, block.data(), block.size() * sizeof(double));
  });
}

jh_status jh_cheb_heat_closed_form(double t, int m, int n, double* value) {
  return guarded([&] {
    require(value != nullptr, "null pointer");
    *value = jacobiheat::cheb_heat_closed_form(t, m, n);
  });
}

jh_status jh_modified_bessel_i(int order, double t, double* value) {
  return guarded([&] {
    require(value != nullptr, "null pointer");
    *value = jacobiheat::modified_bessel_i(order, t);
  });
}

jh_status jh_frak_i_direct(double a, double b, double A, double B,
                           double alpha, double beta, int n, int m, double t,
                           double tol, double* value) {
  return guarded([&] {
    require(value != nullptr, "null pointer");
    const jacobiheat::FrakISpec spec(a, b, A, B, alpha, beta, n, m, t);
    *value = jacobiheat::frak_i_direct(spec, tol > 0 ? tol : 1e-12);
  });
}

jh_status jh_frak_i_recursive(double a, double b, double A, double B,
                              double alpha, double beta, int n, int m,
                              double t, double tol, double* value) {
  return guarded([&] {
    require(value != nullptr, "null pointer");
    const jacobiheat::FrakISpec spec(a, b, A, B, alpha, beta, n, m, t);
    *value = jacobiheat::frak_i_recursive(spec, tol > 0 ? tol : 1e-12);
  });
}

jh_status jh_linearization(jh_model* model, int m, int n, double* out,
                           int* k_min) {
  return guarded([&] {
    require(model && out && k_min, "null pointer");
    const auto row = jacobiheat::linearization_coefficients(model->impl, m, n);
    *k_min = row.k_min;
    std::memcpy(out, row.coefficients.data(),
                row.coefficients.size() * sizeof(double));
  });
}

jh_status jh_h_t_coefficient(jh_model* model, double t, int k, double* direct,
                             double* rodrigues) {
  return guarded([&] {
    require(model && direct && rodrigues, "null pointer");
    *direct = jacobiheat::h_t_direct(model->impl, t, k);
    *rodrigues = jacobiheat::h_t_rodrigues(model->impl, t, k);
  });
}

jh_status jh_translation(jh_model* model, int n, const double* g, size_t g_len,
                         double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto seq = to_sequence(g, g_len);
    const auto result = jacobiheat::translation(model->impl, n, seq);
    const size_t out_len = static_cast<size_t>(n) + g_len;
    for (size_t m = 0; m < out_len; ++m) out[m] = result[static_cast<int>(m)];
  });
}

jh_status jh_convolution(jh_model* model, const double* f, size_t f_len,
                         const double* g, size_t g_len, double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    require(f_len > 0 && g_len > 0, "empty sequence");
    const auto fs = to_sequence(f, f_len);
    const auto gs = to_sequence(g, g_len);
    const auto result = jacobiheat::convolution(model->impl, fs, gs);
    const size_t out_len = f_len + g_len - 1;
    for (size_t m = 0; m < out_len; ++m) out[m] = result[static_cast<int>(m)];
  });
}

int jh_default_truncation(double t, int support) {
  try {
    return jacobiheat::default_truncation(t, support);
  } catch (...) {
    return -1;
  }
}

jh_status jh_apply_heat(jh_model* model, double t, const double* f,
                        size_t f_len, int truncation, double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto seq = to_sequence(f, f_len);
    const auto result = jacobiheat::apply_heat(model->impl, t, seq, truncation);
    for (int n = 0; n <= truncation; ++n) out[n] = result[n];
  });
}

jh_status jh_apply_poisson(jh_model* model, double t, const double* f,
                           size_t f_len, int truncation, int laguerre_nodes,
                           double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto seq = to_sequence(f, f_len);
    const auto result = jacobiheat::apply_poisson(model->impl, t, seq,
                                                  truncation, laguerre_nodes);
    for (int n = 0; n <= truncation; ++n) out[n] = result[n];
  });
}

jh_status jh_maximal_heat(jh_model* model, const double* f, size_t f_len,
                          int n, const double* times, size_t t_len,
                          double* value) {
  return guarded([&] {
    require(model && value && times, "null pointer");
    *value = jacobiheat::maximal_heat(model->impl, to_sequence(f, f_len), n,
                                      std::vector<double>(times, times + t_len));
  });
}

jh_status jh_maximal_poisson(jh_model* model, const double* f, size_t f_len,
                             int n, const double* times, size_t t_len,
                             double* value) {
  return guarded([&] {
    require(model && value && times, "null pointer");
    *value =
        jacobiheat::maximal_poisson(model->impl, to_sequence(f, f_len), n,
                                    std::vector<double>(times, times + t_len));
  });
}

jh_status jh_maximal_heat_profile(jh_model* model, const double* f,
                                  size_t f_len, int n_max, const double* times,
                                  size_t t_len, double* out) {
  return guarded([&] {
    require(model && out && times, "null pointer");
    const auto profile = jacobiheat::maximal_heat_profile(
        model->impl, to_sequence(f, f_len), n_max,
        std::vector<double>(times, times + t_len));
    std::memcpy(out, profile.data(), profile.size() * sizeof(double));
  });
}

jh_status jh_maximal_poisson_profile(jh_model* model, const double* f,
                                     size_t f_len, int n_max,
                                     const double* times, size_t t_len,
                                     double* out) {
  return guarded([&] {
    require(model && out && times, "null pointer");
    const auto profile = jacobiheat::maximal_poisson_profile(
        model->impl, to_sequence(f, f_len), n_max,
        std::vector<double>(times, times + t_len));
    std::memcpy(out, profile.data(), profile.size() * sizeof(double));
  });
}

jh_status jh_matrix_exponential(jh_model* model, double t, int N, double* out) {
  return guarded([&] {
    require(model && out, "null pointer");
    const auto mat = jacobiheat::matrix_exponential_kernel(model->impl, t, N);
    std::memcpy(out, mat.data(), mat.size() * sizeof(double));
  });
}

jh_status jh_general_matrix_exponential(const double* a, const double* b,
                                        int N, double s, double t,
                                        double* out) {
  return guarded([&] {
    require(a && b && out, "null pointer");
    require(N >= 1, "N must be >= 1");
    const jacobiheat::GeneralJacobiMatrix J(
        std::vector<double>(a, a + (N - 1)), std::vector<double>(b, b + N), s);
    const auto mat = jacobiheat::matrix_exponential_kernel(J, t, N);
    std::memcpy(out, mat.data(), mat.size() * sizeof(double));
  });
}

jh_status jh_evolve(jh_model* model, const double* f, size_t f_len,
                    const double* times, size_t t_len, int truncation,
                    double* states, double* energies) {
  return guarded([&] {
    require(model && times && states && energies, "null pointer");
    require(truncation >= 0, "truncation must be >= 0");
    const auto trace = jacobiheat::evolve_ivp(
        model->impl, to_sequence(f, f_len),
        std::vector<double>(times, times + t_len), truncation);
    for (size_t i = 0; i < trace.times.size(); ++i) {
      energies[i] = trace.energies[i];
      for (int n = 0; n <= truncation; ++n) {
        states[i * static_cast<size_t>(truncation + 1) + static_cast<size_t>(n)] =
            trace.states[i][n];
      }
    }
  });
}

jh_status jh_chapman_residual(jh_model* model, double t1, double t2, int n,
                              int j, int truncation, double* residual) {
  return guarded([&] {
    require(model && residual, "null pointer");
    *residual = jacobiheat::chapman_kolmogorov_residual(model->impl, t1, t2, n,
                                                        j, truncation);
  });
}

jh_status jh_bound_constant(jh_model* model, jh_bound_kind kind, int index_min,
                            int index_max, const double* times, size_t t_len,
                            jh_bound_report* report) {
  return guarded([&] {
    require(model && times && report, "null pointer");
    jacobiheat::BoundKind k;
    switch (kind) {
      case JH_BOUND_LEMMA31: k = jacobiheat::BoundKind::Lemma31; break;
      case JH_BOUND_LEMMA41: k = jacobiheat::BoundKind::Lemma41; break;
      case JH_BOUND_LEMMA42: k = jacobiheat::BoundKind::Lemma42; break;
      case JH_BOUND_CZ_B1: k = jacobiheat::BoundKind::CzB1; break;
      case JH_BOUND_CZ_B2: k = jacobiheat::BoundKind::CzB2; break;
      default:
        throw std::invalid_argument("jh_bound_constant: bad kind");
    }
    const auto r = jacobiheat::estimate_bound_constant(
        model->impl, k, index_min, index_max,
        std::vector<double>(times, times + t_len));
    report->constant = r.constant;
    report->arg_m = r.arg_m;
    report->arg_n = r.arg_n;
    report->arg_t = r.arg_t;
  });
}

jh_status jh_uniform_pn_bound(jh_model* model, int n_max, int interior,
                              int edge_depth, jh_bound_report* report) {
  return guarded([&] {
    require(model && report, "null pointer");
    const auto grid = jacobiheat::make_unif_x_grid(interior, edge_depth);
    const auto r =
        jacobiheat::uniform_pn_bound_constant(model->impl, n_max, grid);
    report->constant = r.constant;
    report->arg_m = r.arg_m;
    report->arg_n = r.arg_n;
    report->arg_t = r.arg_t;
  });
}

jh_status jh_ap_constant(const double* weight, int N, double p, double* value) {
  return guarded([&] {
    require(weight && value, "null pointer");
    require(N >= 1, "N must be >= 1");
    *value = jacobiheat::ap_constant(std::vector<double>(weight, weight + N), p, N);
  });
}

jh_status jh_weighted_lp_norm(const double* f, size_t f_len,
                              const double* weight, size_t w_len, double p,
                              double* value) {
  return guarded([&] {
    require(f && weight && value, "null pointer");
    *value = jacobiheat::weighted_lp_norm(
        to_sequence(f, f_len), std::vector<double>(weight, weight + w_len), p);
  });
}

jh_status jh_weak_l1_norm(const double* f, size_t f_len, const double* weight,
                          size_t w_len, double* value) {
  return guarded([&] {
    require(f && weight && value, "null pointer");
    *value = jacobiheat::weak_l1_norm(
        to_sequence(f, f_len), std::vector<double>(weight, weight + w_len));
  });
}

jh_status jh_maximal_ratio_experiment(jh_model* model, const double* weight,
                                      size_t w_len, double p,
                                      const double* test_set, int f_count,
                                      size_t f_len, const double* times,
                                      size_t t_len, int n_max,
                                      double* heat_ratio,
                                      double* poisson_ratio) {
  return guarded([&] {
    require(model && weight && test_set && times && heat_ratio && poisson_ratio,
            "null pointer");
    require(f_count >= 1, "need at least one test sequence");
    std::vector<jacobiheat::Sequence> fs;
    fs.reserve(static_cast<size_t>(f_count));
    for (int i = 0; i < f_count; ++i) {
      fs.push_back(to_sequence(test_set + static_cast<size_t>(i) * f_len, f_len));
    }
    const auto report = jacobiheat::maximal_inequality_experiment(
        model->impl, std::vector<double>(weight, weight + w_len), p, fs,
        std::vector<double>(times, times + t_len), n_max);
    *heat_ratio = report.heat_ratio;
    *poisson_ratio = report.poisson_ratio;
  });
}

}  // extern "C"
