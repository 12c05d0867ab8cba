#include "jacobi_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jacobiheat {

namespace {

// lgamma for strictly positive arguments; every gamma ratio in this module
// stays in that range because alpha, beta > -1.
double log_gamma_pos(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("log_gamma_pos: argument must be positive, got " +
                                std::to_string(x));
  }
  return std::lgamma(x);
}

}  // namespace

JacobiParams::JacobiParams(double alpha_, double beta_)
    : alpha(alpha_), beta(beta_) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::invalid_argument("JacobiParams: alpha and beta must be > -1");
  }
}

double recurrence_a(const JacobiParams& p, int n) {
  if (n < 0) throw std::invalid_argument("recurrence_a: n must be >= 0");
  const double s = p.sum();
  if (n == 0) {
    return 2.0 / (s + 2.0) *
           std::sqrt((p.alpha + 1.0) * (p.beta + 1.0) / (s + 3.0));
  }
  const double t = 2.0 * n + s;
  return 2.0 / (t + 2.0) *
         std::sqrt((n + 1.0) * (n + p.alpha + 1.0) * (n + p.beta + 1.0) *
                   (n + s + 1.0) / ((t + 1.0) * (t + 3.0)));
}

double recurrence_b(const JacobiParams& p, int n) {
  if (n < 0) throw std::invalid_argument("recurrence_b: n must be >= 0");
  if (n == 0) return (p.beta - p.alpha) / (p.sum() + 2.0);
  const double t = 2.0 * n + p.sum();
  return (p.beta * p.beta - p.alpha * p.alpha) / (t * (t + 2.0));
}

double normalization_w(const JacobiParams& p, int n) {
  if (n < 0) throw std::invalid_argument("normalization_w: n must be >= 0");
  const double s = p.sum();
  const double log2 = std::log(2.0);
  if (n == 0) {
    const double lg = log_gamma_pos(s + 2.0) - (s + 1.0) * log2 -
                      log_gamma_pos(p.alpha + 1.0) - log_gamma_pos(p.beta + 1.0);
    return std::exp(0.5 * lg);
  }
  const double lg = std::log(2.0 * n + s + 1.0) + log_gamma_pos(n + 1.0) +
                    log_gamma_pos(n + s + 1.0) - (s + 1.0) * log2 -
                    log_gamma_pos(n + p.alpha + 1.0) -
                    log_gamma_pos(n + p.beta + 1.0);
  return std::exp(0.5 * lg);
}

double decomposition_d(const JacobiParams& p, int n) {
  if (n < 0) throw std::invalid_argument("decomposition_d: n must be >= 0");
  const double s = p.sum();
  if (n == 0) return std::sqrt(2.0 * (p.alpha + 1.0) / (s + 2.0));
  const double t = 2.0 * n + s;
  return std::sqrt(2.0 * (n + s + 1.0) * (n + p.alpha + 1.0) /
                   ((t + 1.0) * (t + 2.0)));
}

double decomposition_e(const JacobiParams& p, int n) {
  if (n < 0) throw std::invalid_argument("decomposition_e: n must be >= 0");
  const double t = 2.0 * n + p.sum();
  return std::sqrt(2.0 * (n + p.beta + 1.0) * (n + 1.0) /
                   ((t + 2.0) * (t + 3.0)));
}

double log_total_mass(const JacobiParams& p) {
  const double s = p.sum();
  return (s + 1.0) * std::log(2.0) + log_gamma_pos(p.alpha + 1.0) +
         log_gamma_pos(p.beta + 1.0) - log_gamma_pos(s + 2.0);
}

double total_mass(const JacobiParams& p) { return std::exp(log_total_mass(p)); }

bool region_v_membership(const JacobiParams& p) {
  if (p.alpha < p.beta) return false;
  const double s = p.sum();
  const double lhs = (s + 1.0) * (s + 4.0) * (s + 4.0) * (s + 6.0);
  const double diff = p.alpha - p.beta;
  const double rhs = diff * diff * ((s + 1.0) * (s + 1.0) - 7.0 * (s + 1.0) - 24.0);
  return lhs >= rhs;
}

bool gasper_simple(const JacobiParams& p) {
  return p.alpha >= p.beta && p.sum() >= -1.0;
}

CoefficientTable::CoefficientTable(JacobiParams params, int cutoff)
    : params_(params), cutoff_(cutoff) {
  if (cutoff < 0) throw std::invalid_argument("CoefficientTable: cutoff must be >= 0");
  const size_t len = static_cast<size_t>(cutoff) + 1;
  a_.resize(len);
  b_.resize(len);
  w_.resize(len);
  d_.resize(len);
  e_.resize(len);
  for (int n = 0; n <= cutoff; ++n) {
    const size_t i = static_cast<size_t>(n);
    a_[i] = recurrence_a(params_, n);
    b_[i] = recurrence_b(params_, n);
    w_[i] = normalization_w(params_, n);
    d_[i] = decomposition_d(params_, n);
    e_[i] = decomposition_e(params_, n);
    if (!(a_[i] > 0.0) || !(w_[i] > 0.0) || !std::isfinite(b_[i])) {
      throw InvariantViolation("CoefficientTable: non-positive or non-finite entry at n=" +
                               std::to_string(n));
    }
  }
}

std::string CoefficientTable::to_json() const {
  std::ostringstream os;
  os.precision(17);
  auto arr = [&os](const char* name, const std::vector<double>& v) {
    os << '"' << name << "\":[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i];
    }
    os << ']';
  };
  os << "{\"alpha\":" << params_.alpha << ",\"beta\":" << params_.beta
     << ",\"cutoff\":" << cutoff_ << ',';
  arr("a", a_);
  os << ',';
  arr("b", b_);
  os << ',';
  arr("w", w_);
  os << ',';
  arr("d", d_);
  os << ',';
  arr("e", e_);
  os << '}';
  return os.str();
}

Sequence::Sequence(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Sequence: non-finite entry");
  }
}

Sequence Sequence::delta(int n, double value) {
  if (n < 0) throw std::invalid_argument("Sequence::delta: n must be >= 0");
  std::vector<double> v(static_cast<size_t>(n) + 1, 0.0);
  v.back() = value;
  return Sequence(std::move(v));
}

int Sequence::support() const {
  for (int n = size() - 1; n >= 0; --n) {
    if (values_[static_cast<size_t>(n)] != 0.0) return n;
  }
  return -1;
}

void Sequence::set(int n, double value) {
  if (n < 0) throw std::invalid_argument("Sequence::set: n must be >= 0");
  if (n >= size()) values_.resize(static_cast<size_t>(n) + 1, 0.0);
  values_[static_cast<size_t>(n)] = value;
}

double Sequence::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

double Sequence::dot(const Sequence& other) const {
  const int n = std::min(size(), other.size());
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += values_[static_cast<size_t>(i)] * other.values_[static_cast<size_t>(i)];
  return s;
}

Sequence Sequence::trimmed(double eps) const {
  int last = -1;
  for (int n = size() - 1; n >= 0; --n) {
    if (std::abs(values_[static_cast<size_t>(n)]) > eps) {
      last = n;
      break;
    }
  }
  std::vector<double> v(values_.begin(), values_.begin() + (last + 1));
  return Sequence(std::move(v));
}

double eval_orthonormal(const CoefficientTable& table, int n, double x) {
  if (n < 0) throw std::invalid_argument("eval_orthonormal: n must be >= 0");
  if (std::abs(x) > 1.0) {
    throw std::invalid_argument("eval_orthonormal: |x| must be <= 1");
  }
  if (n > table.cutoff()) {
    throw std::invalid_argument("eval_orthonormal: table cutoff too small");
  }
  double prev = 0.0;
  double cur = table.w(0);
  for (int k = 0; k < n; ++k) {
    const double a_prev = (k == 0) ? 0.0 : table.a(k - 1);
    const double next = ((x - table.b(k)) * cur - a_prev * prev) / table.a(k);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> eval_orthonormal_batch(const CoefficientTable& table,
                                           int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("eval_orthonormal_batch: n_max must be >= 0");
  if (std::abs(x) > 1.0) {
    throw std::invalid_argument("eval_orthonormal_batch: |x| must be <= 1");
  }
  if (n_max > table.cutoff()) {
    throw std::invalid_argument("eval_orthonormal_batch: table cutoff too small");
  }
  std::vector<double> p(static_cast<size_t>(n_max) + 1);
  p[0] = table.w(0);
  if (n_max == 0) return p;
  p[1] = (x - table.b(0)) * p[0] / table.a(0);
  for (int k = 1; k < n_max; ++k) {
    p[static_cast<size_t>(k) + 1] =
        ((x - table.b(k)) * p[static_cast<size_t>(k)] -
         table.a(k - 1) * p[static_cast<size_t>(k) - 1]) /
        table.a(k);
  }
  return p;
}

Sequence apply_jacobi(const CoefficientTable& table, const Sequence& f,
                      bool shifted) {
  const int sup = f.support();
  if (sup < 0) return Sequence();
  const int out_len = sup + 2;
  if (table.cutoff() < out_len - 1) {
    throw std::invalid_argument("apply_jacobi: table cutoff too small");
  }
  std::vector<double> g(static_cast<size_t>(out_len), 0.0);
  for (int n = 0; n < out_len; ++n) {
    double v = table.b(n) * f[n] + table.a(n) * f[n + 1];
    if (n >= 1) v += table.a(n - 1) * f[n - 1];
    if (shifted) v -= f[n];
    g[static_cast<size_t>(n)] = v;
  }
  return Sequence(std::move(g));
}

Sequence apply_delta(const CoefficientTable& table, const Sequence& f) {
  const int sup = f.support();
  if (sup < 0) return Sequence();
  if (table.cutoff() < sup) {
    throw std::invalid_argument("apply_delta: table cutoff too small");
  }
  std::vector<double> g(static_cast<size_t>(sup) + 1, 0.0);
  for (int n = 0; n <= sup; ++n) {
    g[static_cast<size_t>(n)] = table.d(n) * f[n] - table.e(n) * f[n + 1];
  }
  return Sequence(std::move(g));
}

Sequence apply_delta_star(const CoefficientTable& table, const Sequence& f) {
  const int sup = f.support();
  if (sup < 0) return Sequence();
  const int out_len = sup + 2;
  if (table.cutoff() < out_len - 1) {
    throw std::invalid_argument("apply_delta_star: table cutoff too small");
  }
  std::vector<double> g(static_cast<size_t>(out_len), 0.0);
  g[0] = table.d(0) * f[0];
  for (int n = 1; n < out_len; ++n) {
    g[static_cast<size_t>(n)] = table.d(n) * f[n] - table.e(n - 1) * f[n - 1];
  }
  return Sequence(std::move(g));
}

}  // namespace jacobiheat
