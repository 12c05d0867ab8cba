#pragma once

#include <vector>

#include "model.hpp"

namespace jacobiheat {

/// Heat kernel K_t(m,n) = int e^{-(1-x)t} p_m(x) p_n(x) dmu(x), evaluated
/// by Gauss quadrature with node doubling until the value moves by less
/// than `tol` (<= 0 picks the model default). Values are cached with a
/// symmetric (m,n) key; for node counts beyond the configured quadrature
/// cap the truncated matrix-exponential route is used instead.
double heat_kernel(Model& model, double t, int m, int n, double tol = 0.0);

/// Dense block K_t(m,n) for 0 <= m <= m_max, 0 <= n <= n_max, row-major.
/// One tabulation of p_0..p_max at the quadrature nodes serves the whole
/// block, with the same doubling policy applied to the block maximum.
std::vector<double> heat_kernel_block(Model& model, double t, int m_max,
                                      int n_max, double tol = 0.0);

/// Modified Bessel function I_order(t) for integer order >= 0 and
/// 0 <= t <= 200: power series below t = 20, Miller backward recurrence
/// normalized by e^t = I_0 + 2 sum I_k above.
double modified_bessel_i(int order, double t);

/// Chebyshev-case closed form. With orthonormal polynomials the kernel is
///   K_t(m,n) = kappa(m,n) e^{-t} (I_{|n-m|}(t) + I_{n+m}(t)),
/// kappa = 1 for m,n >= 1, 1/sqrt(2) when exactly one index is 0, and 1/2
/// when both are 0 (the bare cosine integral instead carries pi/2).
double cheb_heat_closed_form(double t, int m, int n);

/// Parameters of the mixed integral
///   int e^{-t(1-x)} P_n^{(a,b)}(x) P_m^{(A,B)}(x) (1-x)^alpha (1+x)^beta dx
/// with un-normalized Jacobi polynomials.
struct FrakISpec {
  double a, b, A, B, alpha, beta;
  int n, m;
  double t;

  FrakISpec(double a_, double b_, double A_, double B_, double alpha_,
            double beta_, int n_, int m_, double t_);
};

/// Direct quadrature evaluation of the mixed integral.
double frak_i_direct(const FrakISpec& spec, double tol = 1e-12);

/// One application of the integration-by-parts identity (cases split on
/// n = 0 / m = 0 / both positive), with every right-hand side integral
/// evaluated directly. Throws std::domain_error when the identity's
/// non-degeneracy conditions fail.
double frak_i_recursive(const FrakISpec& spec, double tol = 1e-12);

/// Expansion p_m p_n = sum_k c[k] p_k with k = |m-n| .. m+n;
/// c[k] = int p_m p_n p_k dmu by a rule of exactness >= 2(m+n).
struct LinearizationRow {
  int m = 0, n = 0;
  int k_min = 0;
  std::vector<double> coefficients;  // index k - k_min

  double c(int k) const {
    const int i = k - k_min;
    return (i >= 0 && i < static_cast<int>(coefficients.size()))
               ? coefficients[static_cast<size_t>(i)]
               : 0.0;
  }
};

LinearizationRow linearization_coefficients(Model& model, int m, int n);

/// h_t(k) = int e^{-(1-x)t} p_k dmu, by direct quadrature and by the
/// Rodrigues form e^{-t} w_k t^k/(2^k k!) int e^{xt} dmu_{alpha+k,beta+k}.
double h_t_direct(Model& model, double t, int k, double tol = 0.0);
double h_t_rodrigues(Model& model, double t, int k, double tol = 0.0);
/// Both routes with an agreement check (1e-10 mixed tolerance); returns
/// the direct value.
double h_t_coefficient(Model& model, double t, int k, double tol = 0.0);

/// h_t as a finite sequence, truncated at the first index whose
/// superexponential majorant w_k (2t)^k / k! * mass(alpha+k, beta+k)
/// falls below `cut`.
Sequence h_t_sequence(Model& model, double t, double cut = 1e-15);

/// Translation tau_n g(m) = sum_k c(k,m,n) g(k) and the convolution
/// (f * g)(n) = sum_m f(m) tau_n g(m).
Sequence translation(Model& model, int n, const Sequence& g);
Sequence convolution(Model& model, const Sequence& f, const Sequence& g);

}  // namespace jacobiheat
