#pragma once

#include <functional>
#include <span>
#include <vector>

#include "jacobi_core.hpp"

namespace jacobiheat {

enum class EigenMode {
  ValuesOnly,       // eigenvalues, ascending
  FirstComponents,  // eigenvalues + first row of the eigenvector matrix
  FullVectors,      // eigenvalues + full orthonormal eigenvector matrix
};

struct EigenDecomposition {
  int n = 0;
  std::vector<double> values;            // ascending
  std::vector<double> first_components;  // first_components[k] = Q(0, k)
  std::vector<double> vectors;           // row-major n x n; column k pairs with values[k]

  double vector_entry(int row, int col) const {
    return vectors[static_cast<size_t>(row) * static_cast<size_t>(n) +
                   static_cast<size_t>(col)];
  }
};

/// Eigen-decomposition of a symmetric tridiagonal matrix by the implicit
/// QL iteration with Wilkinson shifts. `offdiag` has one entry fewer than
/// `diag`; zero off-diagonal entries split the problem. Throws
/// NonConvergence after 50 sweeps on a single eigenvalue.
EigenDecomposition tridiagonal_eigen(std::span<const double> diag,
                                     std::span<const double> offdiag,
                                     EigenMode mode);

struct QuadratureRule {
  JacobiParams params;
  std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
  std::vector<double> weights;  // positive
  int exactness = 0;            // 2 * node_count - 1
  double total_mass = 0.0;
};

/// Gauss rule for (1-x)^alpha (1+x)^beta dx on [-1,1]: nodes are the
/// eigenvalues of the truncated recurrence matrix, weights come from the
/// squared first eigenvector components times the total mass.
QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int node_count);

/// Generalized Gauss-Laguerre rule for u^exponent e^{-u} du on (0, inf),
/// exponent > -1. Returned in the same struct; `params` is unused filler
/// and the nodes live on the positive axis.
QuadratureRule gauss_laguerre_rule(double exponent, int node_count);

/// Sum of weights * integrand(nodes); exact for polynomials of degree up
/// to the rule's exactness. Throws on a non-finite integrand value.
double integrate(const QuadratureRule& rule,
                 const std::function<double(double)>& integrand);

/// Node-count policy for integrands e^{-t(1-x)} * (polynomial of degree
/// max_degree). Callers confirm by doubling once and comparing.
int node_count_heuristic(double t, int max_degree);

}  // namespace jacobiheat
