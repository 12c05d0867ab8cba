#pragma once

#include <memory>
#include <vector>

#include "kernel.hpp"
#include "model.hpp"

namespace jacobiheat {

/// Output-range policy for a heat application at time t: the mass of a
/// sequence supported on [0, support] stays inside
/// support + ceil(10 sqrt(t+1)) + 40 to well below double precision.
int default_truncation(double t, int support);

/// W_t f(n) = sum_m f(m) K_t(m,n) on 0 <= n <= truncation. The sum over m
/// is finite, so entries carry quadrature error only. truncation < 0
/// applies the default policy.
Sequence apply_heat(Model& model, double t, const Sequence& f,
                    int truncation = -1);

/// Subordination integral P_t f = 1/sqrt(pi) int_0^inf e^{-u} u^{-1/2}
/// W_{t^2/(4u)} f du, evaluated by generalized Gauss-Laguerre quadrature
/// with exponent -1/2 (laguerre_nodes <= 0 picks the model default).
Sequence apply_poisson(Model& model, double t, const Sequence& f,
                       int truncation = -1, int laguerre_nodes = 0);

/// Grid approximations of sup_{t>0} |W_t f(n)| and sup_{t>0} |P_t f(n)|.
/// The grid must be non-empty, strictly increasing and positive.
double maximal_heat(Model& model, const Sequence& f, int n,
                    const std::vector<double>& times);
double maximal_poisson(Model& model, const Sequence& f, int n,
                       const std::vector<double>& times);
std::vector<double> maximal_heat_profile(Model& model, const Sequence& f,
                                         int n_max,
                                         const std::vector<double>& times);
std::vector<double> maximal_poisson_profile(Model& model, const Sequence& f,
                                            int n_max,
                                            const std::vector<double>& times);

/// Bounded symmetric tridiagonal operator with a caller-declared supremum
/// of the spectral support; the semigroup uses J - s_plus I.
struct GeneralJacobiMatrix {
  std::vector<double> a;  // off-diagonal, strictly positive
  std::vector<double> b;  // diagonal
  double s_plus = 0.0;

  GeneralJacobiMatrix(std::vector<double> a_, std::vector<double> b_, double s);
  int cutoff() const { return static_cast<int>(b.size()); }
};

/// e^{t (J_N - s_plus I)} for the N x N truncation, via full
/// eigendecomposition; row-major, symmetric.
std::vector<double> matrix_exponential_kernel(const GeneralJacobiMatrix& J,
                                              double t, int N);
/// Same for the model's own recurrence matrix, where s_plus = 1; the
/// decomposition is cached on the model.
std::vector<double> matrix_exponential_kernel(Model& model, double t, int N);

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<Sequence> states;
  std::vector<double> energies;  // E(t) = 1/2 sum u(n,t)^2
};

/// Exact semigroup snapshots u(., t_i) = W_{t_i} f with energies; enforces
/// the dissipation invariant (energies non-increasing up to 1e-10 slack).
EvolutionTrace evolve_ivp(Model& model, const Sequence& f,
                          const std::vector<double>& times,
                          int truncation = -1);

/// || (W_{t+h} f - W_t f)/h - J_shifted W_t f ||_2, the forward-difference
/// check that the trace solves the evolution equation.
double pde_residual(Model& model, const Sequence& f, double t, double h,
                    int truncation = -1);

/// | sum_{m<=truncation} K_{t1}(m,n) K_{t2}(m,j) - K_{t1+t2}(n,j) |.
double chapman_kolmogorov_residual(Model& model, double t1, double t2, int n,
                                   int j, int truncation);

/// Batched heat/Poisson evaluation through one cached eigendecomposition;
/// the workhorse for maximal-operator experiments where thousands of
/// (f, t) pairs share a truncation.
class SpectralEvaluator {
public:
  SpectralEvaluator(Model& model, int size, int laguerre_nodes = 0);

  int size() const { return sd_->n; }
  /// Expansion of f in the eigenbasis (Q^T f).
  std::vector<double> coefficients(const Sequence& f) const;
  /// W_t f(n), n <= n_max, from precomputed coefficients.
  std::vector<double> heat(const std::vector<double>& coeffs, double t,
                           int n_max) const;
  /// P_t f(n), n <= n_max, with the Laguerre sum folded into the filter.
  std::vector<double> poisson(const std::vector<double>& coeffs, double t,
                              int n_max) const;

private:
  std::vector<double> apply_filter(const std::vector<double>& coeffs,
                                   const std::vector<double>& filter,
                                   int n_max) const;

  std::shared_ptr<const SpectralData> sd_;
  QuadratureRule laguerre_;
};

}  // namespace jacobiheat
