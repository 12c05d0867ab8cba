#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace jacobiheat {

namespace {

void require_standard_range(const Model& model) {
  if (!model.params().standard_range()) {
    throw std::invalid_argument(
        "bound estimates require alpha, beta >= -1/2");
  }
}

bool in_local_region(int n, int m) {
  return 2 * n >= m && 2 * n <= 3 * m;
}

std::string describe_ranges(int index_min, int index_max,
                            const std::vector<double>& times) {
  std::ostringstream os;
  os.precision(6);
  os << "indices [" << index_min << "," << index_max << "], t grid "
     << times.size() << " points in [" << times.front() << "," << times.back()
     << "]";
  return os.str();
}

}  // namespace

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::Lemma31: return "lemma31";
    case BoundKind::Lemma41: return "lemma41";
    case BoundKind::Lemma42: return "lemma42";
    case BoundKind::CzB1: return "cz_b1";
    case BoundKind::CzB2: return "cz_b2";
    case BoundKind::UnifPn: return "unif_pn";
  }
  return "unknown";
}

std::string BoundReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"kind\":\"" << bound_kind_name(kind)
     << "\",\"constant\":" << constant << ",\"argmax\":{\"m\":" << arg_m
     << ",\"n\":" << arg_n << ",\"t\":" << arg_t << "},\"ranges\":\"" << ranges
     << "\"}";
  return os.str();
}

BoundReport estimate_bound_constant(Model& model, BoundKind kind,
                                    int index_min, int index_max,
                                    const std::vector<double>& times) {
  require_standard_range(model);
  if (kind == BoundKind::UnifPn) {
    throw std::invalid_argument(
        "estimate_bound_constant: use uniform_pn_bound_constant for unif_pn");
  }
  if (index_min < 0 || index_max < index_min) {
    throw std::invalid_argument("estimate_bound_constant: bad index range");
  }
  if (times.empty()) {
    throw std::invalid_argument("estimate_bound_constant: empty time grid");
  }

  BoundReport report;
  report.kind = kind;
  report.ranges = describe_ranges(index_min, index_max, times);

  const bool needs_diff =
      kind == BoundKind::Lemma42 || kind == BoundKind::CzB1 || kind == BoundKind::CzB2;
  const int m_hi = needs_diff ? index_max + 1 : index_max;
  const size_t stride = static_cast<size_t>(m_hi) + 1;

  // sup over t of |K_t(i+1,m) - K_t(i,m)| per (i,m), filled when needed
  std::vector<double> diff_sup;
  std::vector<double> diff_arg_t;
  if (needs_diff) {
    diff_sup.assign(stride * stride, 0.0);
    diff_arg_t.assign(stride * stride, 0.0);
  }

  for (double t : times) {
    if (!(t > 0.0)) {
      throw std::invalid_argument("estimate_bound_constant: times must be > 0");
    }
    const std::vector<double> block = heat_kernel_block(model, t, m_hi, m_hi);
    auto K = [&](int i, int j) {
      return block[static_cast<size_t>(i) * stride + static_cast<size_t>(j)];
    };
    if (kind == BoundKind::Lemma31 || kind == BoundKind::Lemma41) {
      for (int m = index_min; m <= index_max; ++m) {
        for (int n = index_min; n <= index_max; ++n) {
          if (n == m) continue;
          const double d = std::abs(static_cast<double>(n - m));
          const double ratio = (kind == BoundKind::Lemma41)
                                   ? std::abs(K(n, m)) * d
                                   : std::abs(K(m, n)) * d * d / std::sqrt(t);
          if (ratio > report.constant) {
            report.constant = ratio;
            report.arg_m = m;
            report.arg_n = n;
            report.arg_t = t;
          }
        }
      }
    } else {
      for (int i = index_min; i <= index_max; ++i) {
        for (int m = index_min; m <= index_max; ++m) {
          const double d = std::abs(K(i + 1, m) - K(i, m));
          double& cell = diff_sup[static_cast<size_t>(i) * stride + static_cast<size_t>(m)];
          if (d > cell) {
            cell = d;
            diff_arg_t[static_cast<size_t>(i) * stride + static_cast<size_t>(m)] = t;
          }
        }
      }
    }
  }

  if (kind == BoundKind::Lemma42) {
    bool any = false;
    for (int m = index_min; m <= index_max; ++m) {
      for (int n = index_min; n <= index_max; ++n) {
        if (n == m || !in_local_region(n, m)) continue;
        any = true;
        const double d = static_cast<double>(n - m);
        const double ratio =
            diff_sup[static_cast<size_t>(n) * stride + static_cast<size_t>(m)] * d * d;
        if (ratio > report.constant) {
          report.constant = ratio;
          report.arg_m = m;
          report.arg_n = n;
          report.arg_t = diff_arg_t[static_cast<size_t>(n) * stride + static_cast<size_t>(m)];
        }
      }
    }
    if (!any) {
      throw std::invalid_argument(
          "estimate_bound_constant: empty admissible index set for lemma42");
    }
  } else if (kind == BoundKind::CzB1 || kind == BoundKind::CzB2) {
    // The kernel is symmetric, so the second-argument regularity (b2)
    // reduces to the same telescoped sums as (b1).
    bool any = false;
    for (int m = index_min; m <= index_max; ++m) {
      for (int n = index_min; n <= index_max; ++n) {
        if (!in_local_region(n, m)) continue;
        for (int l = index_min; l <= index_max; ++l) {
          if (l == n || !in_local_region(l, m)) continue;
          if (std::abs(n - m) <= 2 * std::abs(n - l)) continue;
          any = true;
          const int lo = std::min(n, l);
          const int hi = std::max(n, l);
          double tele = 0.0;
          for (int i = lo; i < hi; ++i) {
            tele += diff_sup[static_cast<size_t>(i) * stride + static_cast<size_t>(m)];
          }
          const double ratio = tele * (n - m) * (n - m) / std::abs(n - l);
          if (ratio > report.constant) {
            report.constant = ratio;
            report.arg_m = m;
            report.arg_n = n;
            report.arg_t = static_cast<double>(l);  // records the paired index
          }
        }
      }
    }
    if (!any) {
      throw std::invalid_argument(
          "estimate_bound_constant: empty admissible index set for cz regularity");
    }
  }

  if (!std::isfinite(report.constant)) {
    throw InvariantViolation("estimate_bound_constant: non-finite constant");
  }
  return report;
}

BoundReport uniform_pn_bound_constant(Model& model, int n_max,
                                      const std::vector<double>& x_grid) {
  require_standard_range(model);
  if (n_max < 0) throw std::invalid_argument("uniform_pn_bound_constant: n_max >= 0");
  if (x_grid.empty()) {
    throw std::invalid_argument("uniform_pn_bound_constant: empty x grid");
  }
  const JacobiParams& p = model.params();
  const auto table = model.table(n_max);
  BoundReport report;
  report.kind = BoundKind::UnifPn;
  std::ostringstream os;
  os << "n <= " << n_max << ", " << x_grid.size() << " x points";
  report.ranges = os.str();
  const double ea = 0.5 * p.alpha + 0.25;
  const double eb = 0.5 * p.beta + 0.25;
  for (double x : x_grid) {
    if (!(std::abs(x) < 1.0)) {
      throw std::invalid_argument("uniform_pn_bound_constant: grid must avoid +-1");
    }
    const double envelope = std::pow(1.0 - x, ea) * std::pow(1.0 + x, eb);
    const std::vector<double> values = eval_orthonormal_batch(*table, n_max, x);
    for (int n = 0; n <= n_max; ++n) {
      const double ratio = std::abs(values[static_cast<size_t>(n)]) * envelope;
      if (ratio > report.constant) {
        report.constant = ratio;
        report.arg_n = n;
        report.arg_t = x;
      }
    }
  }
  return report;
}

std::vector<double> make_unif_x_grid(int interior_points, int edge_depth) {
  std::vector<double> grid;
  for (int i = 1; i <= interior_points; ++i) {
    grid.push_back(-1.0 + 2.0 * i / (interior_points + 1.0));
  }
  for (int k = 1; k <= edge_depth; ++k) {
    const double x = 1.0 - std::pow(2.0, -k);
    grid.push_back(x);
    grid.push_back(-x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double ap_constant(const std::vector<double>& weight, double p, int N) {
  if (!(p >= 1.0)) throw std::invalid_argument("ap_constant: p must be >= 1");
  if (N < 1 || N > static_cast<int>(weight.size())) {
    throw std::invalid_argument("ap_constant: N must lie in [1, weight length]");
  }
  for (int k = 0; k < N; ++k) {
    if (!(weight[static_cast<size_t>(k)] > 0.0)) {
      throw std::invalid_argument("ap_constant: weights must be strictly positive");
    }
  }

  double best = 0.0;
  if (p == 1.0) {
    for (int n = 0; n < N; ++n) {
      double sum = 0.0;
      double max_inv = 0.0;
      for (int m = n; m < N; ++m) {
        sum += weight[static_cast<size_t>(m)];
        max_inv = std::max(max_inv, 1.0 / weight[static_cast<size_t>(m)]);
        best = std::max(best, sum / (m - n + 1.0) * max_inv);
      }
    }
    return best;
  }

  std::vector<double> dual(static_cast<size_t>(N));
  const double q = -1.0 / (p - 1.0);
  for (int k = 0; k < N; ++k) {
    dual[static_cast<size_t>(k)] = std::pow(weight[static_cast<size_t>(k)], q);
  }
  for (int n = 0; n < N; ++n) {
    double s1 = 0.0, s2 = 0.0;
    for (int m = n; m < N; ++m) {
      s1 += weight[static_cast<size_t>(m)];
      s2 += dual[static_cast<size_t>(m)];
      const double len = m - n + 1.0;
      best = std::max(best, (s1 / len) * std::pow(s2 / len, p - 1.0));
    }
  }
  return best;
}

double weighted_lp_norm(const Sequence& f, const std::vector<double>& weight,
                        double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
  const int sup = f.support();
  if (sup >= static_cast<int>(weight.size())) {
    throw std::invalid_argument("weighted_lp_norm: weight shorter than the support of f");
  }
  double s = 0.0;
  for (int n = 0; n <= sup; ++n) {
    s += std::pow(std::abs(f[n]), p) * weight[static_cast<size_t>(n)];
  }
  return std::pow(s, 1.0 / p);
}

double weak_l1_norm(const Sequence& f, const std::vector<double>& weight) {
  const int sup = f.support();
  if (sup >= static_cast<int>(weight.size())) {
    throw std::invalid_argument("weak_l1_norm: weight shorter than the support of f");
  }
  std::vector<std::pair<double, double>> entries;  // (|f|, w)
  for (int n = 0; n <= sup; ++n) {
    const double v = std::abs(f[n]);
    if (v > 0.0) entries.emplace_back(v, weight[static_cast<size_t>(n)]);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0;
  double cum = 0.0;
  size_t i = 0;
  while (i < entries.size()) {
    const double v = entries[i].first;
    while (i < entries.size() && entries[i].first == v) {
      cum += entries[i].second;
      ++i;
    }
    best = std::max(best, v * cum);
  }
  return best;
}

std::string MaximalExperimentReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"p\":" << p << ",\"heat_ratio\":" << heat_ratio
     << ",\"poisson_ratio\":" << poisson_ratio << ",\"heat_arg\":" << heat_arg
     << ",\"poisson_arg\":" << poisson_arg << ",\"n_max\":" << n_max << "}";
  return os.str();
}

MaximalExperimentReport maximal_inequality_experiment(
    Model& model, const std::vector<double>& weight, double p,
    const std::vector<Sequence>& test_set, const std::vector<double>& times,
    int n_max) {
  if (!(p >= 1.0)) throw std::invalid_argument("experiment: p must be >= 1");
  if (times.empty()) throw std::invalid_argument("experiment: empty time grid");
  if (n_max < 0 || n_max >= static_cast<int>(weight.size())) {
    throw std::invalid_argument("experiment: weight must cover [0, n_max]");
  }

  const double t_max = *std::max_element(times.begin(), times.end());
  int size = n_max + 1 + static_cast<int>(std::min(
                              10.0 * std::sqrt(t_max + 1.0) + 40.0, 600.0));
  size = std::min(((size + 127) / 128) * 128, model.options().spectral_cap);
  const SpectralEvaluator evaluator(model, size);

  MaximalExperimentReport report;
  report.p = p;
  report.n_max = n_max;

  for (size_t fi = 0; fi < test_set.size(); ++fi) {
    const Sequence& f = test_set[fi];
    if (f.is_zero()) continue;
    if (f.support() > n_max) {
      throw std::invalid_argument("experiment: test sequence exceeds n_max");
    }
    const std::vector<double> coeffs = evaluator.coefficients(f);
    std::vector<double> heat_sup(static_cast<size_t>(n_max) + 1, 0.0);
    std::vector<double> poisson_sup(static_cast<size_t>(n_max) + 1, 0.0);
    for (double t : times) {
      const std::vector<double> wt = evaluator.heat(coeffs, t, n_max);
      const std::vector<double> pt = evaluator.poisson(coeffs, t, n_max);
      for (int n = 0; n <= n_max; ++n) {
        heat_sup[static_cast<size_t>(n)] =
            std::max(heat_sup[static_cast<size_t>(n)], std::abs(wt[static_cast<size_t>(n)]));
        poisson_sup[static_cast<size_t>(n)] =
            std::max(poisson_sup[static_cast<size_t>(n)], std::abs(pt[static_cast<size_t>(n)]));
      }
    }
    const Sequence heat_seq{std::vector<double>(heat_sup)};
    const Sequence poisson_seq{std::vector<double>(poisson_sup)};
    double heat_ratio, poisson_ratio;
    if (p == 1.0) {
      const double denom = weighted_lp_norm(f, weight, 1.0);
      heat_ratio = weak_l1_norm(heat_seq, weight) / denom;
      poisson_ratio = weak_l1_norm(poisson_seq, weight) / denom;
    } else {
      const double denom = weighted_lp_norm(f, weight, p);
      heat_ratio = weighted_lp_norm(heat_seq, weight, p) / denom;
      poisson_ratio = weighted_lp_norm(poisson_seq, weight, p) / denom;
    }
    if (heat_ratio > report.heat_ratio) {
      report.heat_ratio = heat_ratio;
      report.heat_arg = static_cast<int>(fi);
    }
    if (poisson_ratio > report.poisson_ratio) {
      report.poisson_ratio = poisson_ratio;
      report.poisson_arg = static_cast<int>(fi);
    }
  }
  return report;
}

}  // namespace jacobiheat
