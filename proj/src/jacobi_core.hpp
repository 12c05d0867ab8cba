#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jacobiheat {

// Numerical iteration failed to reach the requested tolerance.
class NonConvergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A structural identity the library guarantees was violated at runtime.
class InvariantViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parameter pair (alpha, beta), both > -1.
struct JacobiParams {
  double alpha;
  double beta;

  JacobiParams(double alpha_, double beta_);

  /// True iff alpha >= -1/2 and beta >= -1/2 (the range required by the
  /// kernel size/smoothness estimates).
  bool standard_range() const { return alpha >= -0.5 && beta >= -0.5; }
  double sum() const { return alpha + beta; }
};

/// Off-diagonal recurrence coefficient a_n (n = 0 has its own closed form).
double recurrence_a(const JacobiParams& p, int n);
/// Diagonal recurrence coefficient b_n (n = 0 has its own closed form).
double recurrence_b(const JacobiParams& p, int n);
/// Orthonormalization constant w_n = 1/||P_n||, computed in log-gamma space.
double normalization_w(const JacobiParams& p, int n);
/// Factorization coefficients d_n, e_n with a_n = d_n e_n and
/// b_n = 1 - d_n^2 - e_{n-1}^2.
double decomposition_d(const JacobiParams& p, int n);
double decomposition_e(const JacobiParams& p, int n);

/// Total mass of the measure (1-x)^alpha (1+x)^beta dx on [-1,1].
double total_mass(const JacobiParams& p);
double log_total_mass(const JacobiParams& p);

/// Membership in the region where all linearization coefficients of
/// p_m p_n are non-negative: alpha >= beta together with the quartic
/// inequality in alpha+beta and alpha-beta.
bool region_v_membership(const JacobiParams& p);
/// The simpler sufficient condition: alpha >= beta and alpha + beta >= -1.
bool gasper_simple(const JacobiParams& p);

/// Immutable table of a_n, b_n, w_n, d_n, e_n for 0 <= n <= cutoff.
class CoefficientTable {
public:
  CoefficientTable(JacobiParams params, int cutoff);

  const JacobiParams& params() const { return params_; }
  int cutoff() const { return cutoff_; }

  double a(int n) const { return a_.at(static_cast<size_t>(n)); }
  double b(int n) const { return b_.at(static_cast<size_t>(n)); }
  double w(int n) const { return w_.at(static_cast<size_t>(n)); }
  double d(int n) const { return d_.at(static_cast<size_t>(n)); }
  double e(int n) const { return e_.at(static_cast<size_t>(n)); }

  const std::vector<double>& a_data() const { return a_; }
  const std::vector<double>& b_data() const { return b_; }
  const std::vector<double>& w_data() const { return w_; }

  std::string to_json() const;

private:
  JacobiParams params_;
  int cutoff_;
  std::vector<double> a_, b_, w_, d_, e_;
};

/// Real sequence on the non-negative integers with finite support.
class Sequence {
public:
  Sequence() = default;
  explicit Sequence(std::vector<double> values);
  static Sequence delta(int n, double value = 1.0);

  /// Largest index holding a nonzero value; -1 for the zero sequence.
  int support() const;
  int size() const { return static_cast<int>(values_.size()); }
  bool is_zero() const { return support() < 0; }

  double operator[](int n) const {
    return (n >= 0 && n < size()) ? values_[static_cast<size_t>(n)] : 0.0;
  }
  void set(int n, double value);

  const std::vector<double>& values() const { return values_; }

  double l2_norm() const;
  double dot(const Sequence& other) const;
  /// Drop a trailing run of entries smaller than `eps` in magnitude.
  Sequence trimmed(double eps = 0.0) const;

private:
  std::vector<double> values_;
};

/// p_n(x) = w_n P_n(x) by the forward normalized three-term recurrence.
/// Requires |x| <= 1 and table.cutoff() >= n.
double eval_orthonormal(const CoefficientTable& table, int n, double x);
/// All of p_0(x), ..., p_nmax(x) in one recurrence pass.
std::vector<double> eval_orthonormal_batch(const CoefficientTable& table,
                                           int n_max, double x);

/// J f(n) = a_{n-1} f(n-1) + b_n f(n) + a_n f(n+1) with the boundary row
/// J f(0) = b_0 f(0) + a_0 f(1); `shifted` subtracts the identity.
Sequence apply_jacobi(const CoefficientTable& table, const Sequence& f,
                      bool shifted);
/// delta f(n) = d_n f(n) - e_n f(n+1).
Sequence apply_delta(const CoefficientTable& table, const Sequence& f);
/// delta* f(n) = d_n f(n) - e_{n-1} f(n-1), delta* f(0) = d_0 f(0).
Sequence apply_delta_star(const CoefficientTable& table, const Sequence& f);

}  // namespace jacobiheat
