/* Discrete heat and Poisson semigroups for Jacobi recurrence operators.
 *
 * All functions return a jh_status; outputs go through pointers. A model
 * handle owns the coefficient tables, quadrature rules and kernel caches
 * for one (alpha, beta) pair and is safe to share across threads.
 * jh_last_error() describes the most recent failure on the calling thread.
 */
#ifndef JACOBIHEAT_H
#define JACOBIHEAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jh_status {
  JH_OK = 0,
  JH_ERR_INVALID_ARGUMENT = 1,
  JH_ERR_NO_CONVERGENCE = 2,
  JH_ERR_INVARIANT = 3,
  JH_ERR_INTERNAL = 4
} jh_status;

typedef struct jh_model jh_model;

const char* jh_version(void);
/* Message for the last error raised on this thread; empty string if none. */
const char* jh_last_error(void);

/* ---- model lifetime -------------------------------------------------- */

/* Requires alpha > -1 and beta > -1. */
jh_status jh_model_create(double alpha, double beta, jh_model** out);
void jh_model_destroy(jh_model* model);
jh_status jh_model_params(const jh_model* model, double* alpha, double* beta);
/* standard_range: alpha >= -1/2 and beta >= -1/2. */
jh_status jh_model_standard_range(const jh_model* model, int* flag);

/* Absolute convergence target for kernel quadrature (default 1e-12). */
jh_status jh_set_kernel_tolerance(jh_model* model, double tol);
/* Gauss-Laguerre node count for the Poisson subordination (default 64). */
jh_status jh_set_poisson_nodes(jh_model* model, int nodes);

/* ---- recurrence coefficients and polynomials ------------------------- */

jh_status jh_recurrence_coefficients(jh_model* model, int n, double* a,
                                     double* b);
jh_status jh_normalization_constant(jh_model* model, int n, double* w);
/* Factorization coefficients: a_n = d_n e_n, b_n = 1 - d_n^2 - e_{n-1}^2. */
jh_status jh_factorization_coefficients(jh_model* model, int n, double* d,
                                        double* e);
/* Total mass of (1-x)^alpha (1+x)^beta dx over [-1,1]. */
jh_status jh_total_mass(jh_model* model, double* mass);
/* in_v: the exact linearization-positivity region; simple: the weaker
 * test alpha >= beta and alpha + beta >= -1. */
jh_status jh_region_v(jh_model* model, int* in_v, int* simple);

/* Orthonormal value p_n(x), |x| <= 1. */
jh_status jh_eval_orthonormal(jh_model* model, int n, double x, double* value);
/* p_0(x) .. p_nmax(x); out must hold nmax+1 doubles. */
jh_status jh_eval_orthonormal_batch(jh_model* model, int n_max, double x,
                                    double* out);

/* JSON dump of a_n, b_n, w_n, d_n, e_n up to `cutoff`; free the returned
 * string with jh_string_free. */
jh_status jh_coefficient_table_json(jh_model* model, int cutoff, char** out);
void jh_string_free(char* s);

/* ---- sequence operators ---------------------------------------------- */

/* out must hold len+1 doubles. shifted != 0 applies J - I. */
jh_status jh_apply_jacobi(jh_model* model, const double* f, size_t len,
                          int shifted, double* out);
/* out must hold len doubles. */
jh_status jh_apply_delta(jh_model* model, const double* f, size_t len,
                         double* out);
/* out must hold len+1 doubles. */
jh_status jh_apply_delta_star(jh_model* model, const double* f, size_t len,
                              double* out);

/* ---- quadrature ------------------------------------------------------ */

/* Gauss rule for the model's measure; nodes and weights must each hold
 * node_count doubles. */
jh_status jh_quadrature_rule(jh_model* model, int node_count, double* nodes,
                             double* weights);
/* Policy node count for integrands e^{-t(1-x)} * poly(max_degree). */
int jh_node_count_heuristic(double t, int max_degree);

/* ---- heat kernel ------------------------------------------------------ */

/* tol <= 0 selects the model default. */
jh_status jh_heat_kernel(jh_model* model, double t, int m, int n, double tol,
                         double* value);
/* Row-major (m_max+1) x (m_max+1) grid. */
jh_status jh_heat_kernel_grid(jh_model* model, double t, int m_max, double tol,
                              double* out);
/* Closed form at alpha = beta = -1/2 via modified Bessel functions. */
jh_status jh_cheb_heat_closed_form(double t, int m, int n, double* value);
/* I_order(t) for integer order >= 0 and 0 <= t <= 200. */
jh_status jh_modified_bessel_i(int order, double t, double* value);

/* Mixed-parameter integral of e^{-t(1-x)} P_n^{(a,b)} P_m^{(A,B)} against
 * (1-x)^alpha (1+x)^beta dx, directly and via one step of the
 * integration-by-parts identity. */
jh_status jh_frak_i_direct(double a, double b, double A, double B,
                           double alpha, double beta, int n, int m, double t,
                           double tol, double* value);
jh_status jh_frak_i_recursive(double a, double b, double A, double B,
                              double alpha, double beta, int n, int m,
                              double t, double tol, double* value);

/* Coefficients of p_m p_n = sum c_k p_k, k = |m-n| .. m+n; out must hold
 * 2*min(m,n)+1 doubles, *k_min receives |m-n|. */
jh_status jh_linearization(jh_model* model, int m, int n, double* out,
                           int* k_min);
/* h_t(k) by direct quadrature and by the Rodrigues route (both returned;
 * they agree to 1e-10). */
jh_status jh_h_t_coefficient(jh_model* model, double t, int k, double* direct,
                             double* rodrigues);

/* Translation tau_n g and convolution f * g. out must hold n + g_len
 * doubles for the translation and f_len + g_len - 1 for the convolution. */
jh_status jh_translation(jh_model* model, int n, const double* g, size_t g_len,
                         double* out);
jh_status jh_convolution(jh_model* model, const double* f, size_t f_len,
                         const double* g, size_t g_len, double* out);

/* ---- semigroups ------------------------------------------------------- */

/* Output-range policy: support + ceil(10 sqrt(t+1)) + 40. */
int jh_default_truncation(double t, int support);

/* W_t f on 0..truncation; out must hold truncation+1 doubles and
 * truncation must cover the support of f. */
jh_status jh_apply_heat(jh_model* model, double t, const double* f,
                        size_t f_len, int truncation, double* out);
/* P_t f by Gauss-Laguerre subordination; laguerre_nodes <= 0 selects the
 * model default. */
jh_status jh_apply_poisson(jh_model* model, double t, const double* f,
                           size_t f_len, int truncation, int laguerre_nodes,
                           double* out);

/* Grid suprema of |W_t f(n)| / |P_t f(n)| over a strictly increasing
 * positive time grid. */
jh_status jh_maximal_heat(jh_model* model, const double* f, size_t f_len,
                          int n, const double* times, size_t t_len,
                          double* value);
jh_status jh_maximal_poisson(jh_model* model, const double* f, size_t f_len,
                             int n, const double* times, size_t t_len,
                             double* value);
/* Whole profiles for n = 0..n_max; out must hold n_max+1 doubles. */
jh_status jh_maximal_heat_profile(jh_model* model, const double* f,
                                  size_t f_len, int n_max, const double* times,
                                  size_t t_len, double* out);
jh_status jh_maximal_poisson_profile(jh_model* model, const double* f,
                                     size_t f_len, int n_max,
                                     const double* times, size_t t_len,
                                     double* out);

/* e^{t(J_N - I)} for the model's recurrence matrix; out is row-major NxN. */
jh_status jh_matrix_exponential(jh_model* model, double t, int N, double* out);
/* Same for a caller-supplied bounded tridiagonal matrix with declared
 * spectral supremum s (s_plus = max(s, 0)); a has N-1 entries, b has N. */
jh_status jh_general_matrix_exponential(const double* a, const double* b,
                                        int N, double s, double t,
                                        double* out);

/* Semigroup snapshots W_{t_i} f with energies E = 1/2 sum u^2; states is
 * row-major t_len x (truncation+1), energies holds t_len doubles. The
 * grid may include t = 0 and must be strictly increasing. */
jh_status jh_evolve(jh_model* model, const double* f, size_t f_len,
                    const double* times, size_t t_len, int truncation,
                    double* states, double* energies);

/* | sum_{m<=truncation} K_{t1}(m,n) K_{t2}(m,j) - K_{t1+t2}(n,j) |. */
jh_status jh_chapman_residual(jh_model* model, double t1, double t2, int n,
                              int j, int truncation, double* residual);

/* ---- analysis ---------------------------------------------------------- */

typedef enum jh_bound_kind {
  JH_BOUND_LEMMA31 = 0,
  JH_BOUND_LEMMA41 = 1,
  JH_BOUND_LEMMA42 = 2,
  JH_BOUND_CZ_B1 = 3,
  JH_BOUND_CZ_B2 = 4,
  JH_BOUND_UNIF_PN = 5
} jh_bound_kind;

typedef struct jh_bound_report {
  double constant;
  int arg_m;
  int arg_n;
  double arg_t; /* attaining t; attaining x for the polynomial bound */
} jh_bound_report;

/* Empirical constant of the chosen kernel estimate over
 * [index_min, index_max]^2 and the time grid; requires
 * alpha, beta >= -1/2. */
jh_status jh_bound_constant(jh_model* model, jh_bound_kind kind, int index_min,
                            int index_max, const double* times, size_t t_len,
                            jh_bound_report* report);
/* sup |p_n(x)| (1-x)^{alpha/2+1/4} (1+x)^{beta/2+1/4} over n <= n_max and
 * a grid with `interior` uniform points plus edge points 1 - 2^{-k},
 * k <= edge_depth. */
jh_status jh_uniform_pn_bound(jh_model* model, int n_max, int interior,
                              int edge_depth, jh_bound_report* report);

/* Truncated Muckenhoupt constant over intervals inside [0, N-1]. */
jh_status jh_ap_constant(const double* weight, int N, double p, double* value);
jh_status jh_weighted_lp_norm(const double* f, size_t f_len,
                              const double* weight, size_t w_len, double p,
                              double* value);
jh_status jh_weak_l1_norm(const double* f, size_t f_len, const double* weight,
                          size_t w_len, double* value);

/* Max over a rectangular test set (f_count rows of f_len entries) of
 * ||W_* f|| / ||f|| and ||P_* f|| / ||f|| in the weighted lp norm
 * (weak-l1 over l1 when p = 1), with maximal values taken over the time
 * grid and norms over 0..n_max. */
jh_status jh_maximal_ratio_experiment(jh_model* model, const double* weight,
                                      size_t w_len, double p,
                                      const double* test_set, int f_count,
                                      size_t f_len, const double* times,
                                      size_t t_len, int n_max,
                                      double* heat_ratio,
                                      double* poisson_ratio);

#ifdef __cplusplus
}
#endif

#endif /* JACOBIHEAT_H */
