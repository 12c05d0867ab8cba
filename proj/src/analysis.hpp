#pragma once

#include <string>
#include <vector>

#include "semigroup.hpp"

namespace jacobiheat {

enum class BoundKind {
  Lemma31,  // |K_t(m,n)| (m-n)^2 / sqrt(t)
  Lemma41,  // |K_t(n,m)| |n-m|            (the size condition)
  Lemma42,  // sup_t |K_t(n+1,m)-K_t(n,m)| (n-m)^2 on m/2 <= n <= 3m/2
  CzB1,     // telescoped first-argument regularity ratio
  CzB2,     // second-argument regularity; equal to CzB1 for this symmetric kernel
  UnifPn,   // |p_n(x)| (1-x)^{a/2+1/4} (1+x)^{b/2+1/4}
};

const char* bound_kind_name(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::Lemma41;
  double constant = 0.0;
  int arg_m = -1;
  int arg_n = -1;
  double arg_t = 0.0;  // attaining t, or attaining x for UnifPn
  std::string ranges;

  std::string to_json() const;
};

/// Empirical supremum of the defining ratio of `kind` over indices in
/// [index_min, index_max] and the given time grid. Requires
/// alpha, beta >= -1/2. Throws when the local-region filters leave no
/// admissible index pair.
BoundReport estimate_bound_constant(Model& model, BoundKind kind,
                                    int index_min, int index_max,
                                    const std::vector<double>& times);

/// Supremum of the weighted polynomial product over n <= n_max and the
/// x grid (which must avoid the endpoints).
BoundReport uniform_pn_bound_constant(Model& model, int n_max,
                                      const std::vector<double>& x_grid);

/// Interior grid plus points approaching +-1 geometrically (1 - 2^{-k},
/// k = 1..edge_depth).
std::vector<double> make_unif_x_grid(int interior_points, int edge_depth);

/// Discrete Muckenhoupt constant truncated to intervals inside [0, N-1];
/// p = 1 uses the max form. Exact O(N^2) evaluation with running sums.
double ap_constant(const std::vector<double>& weight, double p, int N);

double weighted_lp_norm(const Sequence& f, const std::vector<double>& weight,
                        double p);
/// sup_{t>0} t * w({|f| > t}), attained just below a value of |f|.
double weak_l1_norm(const Sequence& f, const std::vector<double>& weight);

struct MaximalExperimentReport {
  double p = 2.0;
  double heat_ratio = 0.0;
  double poisson_ratio = 0.0;
  int heat_arg = -1;     // index into the test set
  int poisson_arg = -1;
  int n_max = 0;
  std::string to_json() const;
};

/// Max over the test set of ||W_* f|| / ||f|| in the weighted lp norm
/// (weak-l1 against l1 when p = 1), and the same for P_*. Maximal values
/// are grid suprema over `times`; both semigroups are evaluated through
/// one shared eigendecomposition sized for the largest time.
MaximalExperimentReport maximal_inequality_experiment(
    Model& model, const std::vector<double>& weight, double p,
    const std::vector<Sequence>& test_set, const std::vector<double>& times,
    int n_max);

}  // namespace jacobiheat
