#include "model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>

namespace jacobiheat {

namespace {

std::int64_t key_bits(double x) { return std::bit_cast<std::int64_t>(x); }

// Mix (t, m, n) into one cache key; m <= n is enforced by the caller.
std::uint64_t kernel_key(double t, int m, int n) {
  std::uint64_t h = std::bit_cast<std::uint64_t>(t);
  h ^= 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h = h * 1099511628211ull ^ static_cast<std::uint64_t>(m);
  h = h * 1099511628211ull ^ static_cast<std::uint64_t>(n);
  return h;
}

}  // namespace

Model::Model(JacobiParams params, ModelOptions options)
    : params_(params), options_(options) {
  table_ = std::make_shared<const CoefficientTable>(params_, 64);
}

std::shared_ptr<const CoefficientTable> Model::table(int min_cutoff) {
  {
    std::shared_lock lock(table_mutex_);
    if (table_->cutoff() >= min_cutoff) return table_;
  }
  std::unique_lock lock(table_mutex_);
  if (table_->cutoff() < min_cutoff) {
    int cutoff = std::max(table_->cutoff() * 2, min_cutoff);
    table_ = std::make_shared<const CoefficientTable>(params_, cutoff);
  }
  return table_;
}

std::shared_ptr<const QuadratureRule> Model::rule(int node_count) {
  return shifted_rule(params_.alpha, params_.beta, node_count);
}

std::shared_ptr<const QuadratureRule> Model::shifted_rule(double alpha,
                                                          double beta,
                                                          int node_count) {
  const auto key = std::make_tuple(key_bits(alpha), key_bits(beta), node_count);
  {
    std::shared_lock lock(rule_mutex_);
    auto it = rules_.find(key);
    if (it != rules_.end()) return it->second;
  }
  auto built = std::make_shared<const QuadratureRule>(
      gauss_jacobi_rule(JacobiParams(alpha, beta), node_count));
  std::unique_lock lock(rule_mutex_);
  auto it = rules_.find(key);
  if (it != rules_.end()) return it->second;
  if (static_cast<int>(rule_order_.size()) >= options_.rule_cache_cap) {
    rules_.erase(rule_order_.front());
    rule_order_.erase(rule_order_.begin());
  }
  rules_[key] = built;
  rule_order_.push_back(key);
  return built;
}

std::shared_ptr<const SpectralData> Model::spectral(int n) {
  {
    std::shared_lock lock(spectral_mutex_);
    auto it = spectral_.find(n);
    if (it != spectral_.end()) return it->second;
  }
  auto tab = table(n);
  std::vector<double> diag(static_cast<size_t>(n));
  std::vector<double> off(static_cast<size_t>(n) - 1);
  for (int i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = tab->b(i);
  for (int i = 0; i + 1 < n; ++i) off[static_cast<size_t>(i)] = tab->a(i);
  EigenDecomposition eig = tridiagonal_eigen(diag, off, EigenMode::FullVectors);
  auto data = std::make_shared<SpectralData>();
  data->n = n;
  data->values = std::move(eig.values);
  data->vectors = std::move(eig.vectors);
  std::unique_lock lock(spectral_mutex_);
  auto [it, inserted] = spectral_.emplace(n, std::move(data));
  return it->second;
}

bool Model::kernel_cache_lookup(double t, int m, int n, double* out) const {
  if (m > n) std::swap(m, n);
  std::shared_lock lock(kernel_mutex_);
  auto it = kernel_values_.find(kernel_key(t, m, n));
  if (it == kernel_values_.end()) return false;
  *out = it->second;
  return true;
}

void Model::kernel_cache_store(double t, int m, int n, double value) {
  if (m > n) std::swap(m, n);
  std::unique_lock lock(kernel_mutex_);
  kernel_values_.emplace(kernel_key(t, m, n), value);
}

std::shared_ptr<const std::vector<double>> Model::block_cache_lookup(
    double t, int m_max, int n_max) const {
  const auto key = std::make_tuple(key_bits(t), m_max, n_max);
  std::shared_lock lock(block_mutex_);
  auto it = blocks_.find(key);
  return it == blocks_.end() ? nullptr : it->second;
}

void Model::block_cache_store(double t, int m_max, int n_max,
                              std::shared_ptr<const std::vector<double>> block) {
  const auto key = std::make_tuple(key_bits(t), m_max, n_max);
  std::unique_lock lock(block_mutex_);
  if (blocks_.contains(key)) return;
  if (block_order_.size() >= 160) {
    blocks_.erase(block_order_.front());
    block_order_.erase(block_order_.begin());
  }
  blocks_[key] = std::move(block);
  block_order_.push_back(key);
}

}  // namespace jacobiheat
