#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "jacobi_core.hpp"
#include "quadrature.hpp"

namespace jacobiheat {

struct ModelOptions {
  double kernel_tol = 1e-12;      // absolute convergence target per kernel value
  int kernel_doubling_cap = 4;    // node doublings before giving up
  int poisson_nodes = 64;         // generalized Gauss-Laguerre node count
  int max_quadrature_nodes = 1600;  // beyond this the spectral route takes over
  int rule_cache_cap = 128;
  int spectral_cap = 1664;        // largest cached spectral truncation
};

/// Spectral decomposition of the truncated recurrence matrix, used for the
/// matrix-exponential route.
struct SpectralData {
  int n = 0;
  std::vector<double> values;   // eigenvalues, ascending
  std::vector<double> vectors;  // row-major n x n
};

/// Shared state for one parameter pair: coefficient tables, quadrature
/// rules, kernel values and spectral decompositions. All caches support
/// concurrent readers with exclusive insertion; the tables themselves are
/// immutable once built.
class Model {
public:
  explicit Model(JacobiParams params, ModelOptions options = {});

  const JacobiParams& params() const { return params_; }
  ModelOptions& options() { return options_; }
  const ModelOptions& options() const { return options_; }

  /// Coefficient table with cutoff >= min_cutoff (grown geometrically).
  std::shared_ptr<const CoefficientTable> table(int min_cutoff);

  /// Cached Gauss-Jacobi rule for this model's parameters.
  std::shared_ptr<const QuadratureRule> rule(int node_count);

  /// Cached Gauss-Jacobi rule for shifted parameters (alpha + k, beta + k).
  std::shared_ptr<const QuadratureRule> shifted_rule(double alpha, double beta,
                                                     int node_count);

  /// Cached eigen-decomposition of the n x n truncation of the recurrence
  /// matrix (full vectors).
  std::shared_ptr<const SpectralData> spectral(int n);

  bool kernel_cache_lookup(double t, int m, int n, double* out) const;
  void kernel_cache_store(double t, int m, int n, double value);

  /// Cached dense kernel blocks keyed by (t, m_max, n_max); bounded FIFO.
  std::shared_ptr<const std::vector<double>> block_cache_lookup(double t,
                                                                int m_max,
                                                                int n_max) const;
  void block_cache_store(double t, int m_max, int n_max,
                         std::shared_ptr<const std::vector<double>> block);

private:
  JacobiParams params_;
  ModelOptions options_;

  mutable std::shared_mutex table_mutex_;
  std::shared_ptr<const CoefficientTable> table_;

  mutable std::shared_mutex rule_mutex_;
  std::map<std::tuple<std::int64_t, std::int64_t, int>,
           std::shared_ptr<const QuadratureRule>>
      rules_;
  std::vector<std::tuple<std::int64_t, std::int64_t, int>> rule_order_;

  mutable std::shared_mutex spectral_mutex_;
  std::map<int, std::shared_ptr<const SpectralData>> spectral_;

  mutable std::shared_mutex kernel_mutex_;
  std::unordered_map<std::uint64_t, double> kernel_values_;

  mutable std::shared_mutex block_mutex_;
  std::map<std::tuple<std::int64_t, int, int>,
           std::shared_ptr<const std::vector<double>>>
      blocks_;
  std::vector<std::tuple<std::int64_t, int, int>> block_order_;
};

}  // namespace jacobiheat
