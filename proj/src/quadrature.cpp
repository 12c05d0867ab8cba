#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jacobiheat {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

constexpr int kMaxSweeps = 50;

// Implicit QL with Wilkinson shifts (EISPACK tql2 lineage). `z` is either
// empty (no accumulation), a single row of length n (first-row
// accumulation), or a full row-major n x n matrix initialized to the
// identity.
void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 std::vector<double>& z, int z_rows) {
  const int n = static_cast<int>(d.size());
  if (n == 0) throw std::invalid_argument("tridiagonal_eigen: empty matrix");
  if (n == 1) return;
  // e is used as scratch with a trailing zero slot.
  e.push_back(0.0);

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) {
          throw NonConvergence("tridiagonal_eigen: QL sweep cap reached");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int row = 0; row < z_rows; ++row) {
            double* zr = z.data() + static_cast<size_t>(row) * static_cast<size_t>(n);
            f = zr[i + 1];
            zr[i + 1] = s * zr[i] + c * f;
            zr[i] = c * zr[i] - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

void sort_ascending(std::vector<double>& values, std::vector<double>& z,
                    int z_rows) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](int i, int j) { return values[static_cast<size_t>(i)] < values[static_cast<size_t>(j)]; });
  std::vector<double> tmp_vals(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) tmp_vals[static_cast<size_t>(k)] = values[static_cast<size_t>(order[static_cast<size_t>(k)])];
  values = std::move(tmp_vals);
  if (z_rows > 0) {
    std::vector<double> tmp(z.size());
    for (int row = 0; row < z_rows; ++row) {
      const double* src = z.data() + static_cast<size_t>(row) * static_cast<size_t>(n);
      double* dst = tmp.data() + static_cast<size_t>(row) * static_cast<size_t>(n);
      for (int k = 0; k < n; ++k) dst[k] = src[order[static_cast<size_t>(k)]];
    }
    z = std::move(tmp);
  }
}

}  // namespace

EigenDecomposition tridiagonal_eigen(std::span<const double> diag,
                                     std::span<const double> offdiag,
                                     EigenMode mode) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) throw std::invalid_argument("tridiagonal_eigen: empty matrix");
  if (static_cast<int>(offdiag.size()) != n - 1) {
    throw std::invalid_argument("tridiagonal_eigen: offdiag must have n-1 entries");
  }

  EigenDecomposition out;
  out.n = n;
  out.values.assign(diag.begin(), diag.end());
  std::vector<double> e(offdiag.begin(), offdiag.end());

  int z_rows = 0;
  std::vector<double> z;
  if (mode == EigenMode::FirstComponents) {
    z_rows = 1;
    z.assign(static_cast<size_t>(n), 0.0);
    z[0] = 1.0;
  } else if (mode == EigenMode::FullVectors) {
    z_rows = n;
    z.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) z[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(i)] = 1.0;
  }

  ql_implicit(out.values, e, z, z_rows);
  sort_ascending(out.values, z, z_rows);

  if (mode == EigenMode::FirstComponents) {
    out.first_components = std::move(z);
  } else if (mode == EigenMode::FullVectors) {
    out.vectors = std::move(z);
    out.first_components.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) out.first_components[static_cast<size_t>(k)] = out.vectors[static_cast<size_t>(k)];
  }
  return out;
}

QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int node_count) {
  if (node_count < 1) {
    throw std::invalid_argument("gauss_jacobi_rule: node_count must be >= 1");
  }
  std::vector<double> diag(static_cast<size_t>(node_count));
  std::vector<double> off(static_cast<size_t>(node_count) - 1);
  for (int i = 0; i < node_count; ++i) diag[static_cast<size_t>(i)] = recurrence_b(params, i);
  for (int i = 0; i + 1 < node_count; ++i) off[static_cast<size_t>(i)] = recurrence_a(params, i);

  const EigenDecomposition eig =
      tridiagonal_eigen(diag, off, EigenMode::FirstComponents);

  QuadratureRule rule{params, {}, {}, 2 * node_count - 1, total_mass(params)};
  rule.nodes = eig.values;
  rule.weights.resize(static_cast<size_t>(node_count));
  for (int k = 0; k < node_count; ++k) {
    const double q = eig.first_components[static_cast<size_t>(k)];
    rule.weights[static_cast<size_t>(k)] = rule.total_mass * q * q;
  }
  for (int k = 0; k < node_count; ++k) {
    const double x = rule.nodes[static_cast<size_t>(k)];
    if (!(x > -1.0 && x < 1.0)) {
      throw InvariantViolation("gauss_jacobi_rule: node outside (-1,1)");
    }
    if (!(rule.weights[static_cast<size_t>(k)] > 0.0)) {
      throw InvariantViolation("gauss_jacobi_rule: non-positive weight");
    }
  }
  return rule;
}

QuadratureRule gauss_laguerre_rule(double exponent, int node_count) {
  if (!(exponent > -1.0)) {
    throw std::invalid_argument("gauss_laguerre_rule: exponent must be > -1");
  }
  if (node_count < 1) {
    throw std::invalid_argument("gauss_laguerre_rule: node_count must be >= 1");
  }
  std::vector<double> diag(static_cast<size_t>(node_count));
  std::vector<double> off(static_cast<size_t>(node_count) - 1);
  for (int i = 0; i < node_count; ++i) {
    diag[static_cast<size_t>(i)] = 2.0 * i + exponent + 1.0;
  }
  for (int i = 0; i + 1 < node_count; ++i) {
    off[static_cast<size_t>(i)] = std::sqrt((i + 1.0) * (i + 1.0 + exponent));
  }
  const EigenDecomposition eig =
      tridiagonal_eigen(diag, off, EigenMode::FirstComponents);

  QuadratureRule rule{JacobiParams(0.0, 0.0), {}, {}, 2 * node_count - 1,
                      std::exp(std::lgamma(exponent + 1.0))};
  rule.nodes = eig.values;
  rule.weights.resize(static_cast<size_t>(node_count));
  for (int k = 0; k < node_count; ++k) {
    const double q = eig.first_components[static_cast<size_t>(k)];
    rule.weights[static_cast<size_t>(k)] = rule.total_mass * q * q;
  }
  return rule;
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(double)>& integrand) {
  double s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = integrand(rule.nodes[i]);
    if (!std::isfinite(v)) {
      throw std::invalid_argument("integrate: non-finite integrand value at a node");
    }
    s += rule.weights[i] * v;
  }
  return s;
}

int node_count_heuristic(double t, int max_degree) {
  if (t < 0.0) throw std::invalid_argument("node_count_heuristic: t must be >= 0");
  if (max_degree < 0) {
    throw std::invalid_argument("node_count_heuristic: max_degree must be >= 0");
  }
  return (max_degree + 1) / 2 + static_cast<int>(std::ceil(t)) + 40;
}

}  // namespace jacobiheat
