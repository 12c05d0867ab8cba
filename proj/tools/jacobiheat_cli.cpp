// Command-line front end for the jacobiheat shared library. Links the C
// API only; all numerics live behind the library boundary.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "jacobiheat/jacobiheat.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitInvariant = 3;

int exit_code_for(jh_status status) {
  switch (status) {
    case JH_OK: return 0;
    case JH_ERR_INVALID_ARGUMENT: return kExitValidation;
    case JH_ERR_NO_CONVERGENCE: return kExitNoConvergence;
    case JH_ERR_INVARIANT: return kExitInvariant;
    default: return 4;
  }
}

[[noreturn]] void fail(jh_status status, const std::string& context) {
  std::cerr << "error: " << context << ": " << jh_last_error() << "\n";
  std::exit(exit_code_for(status));
}

void check(jh_status status, const std::string& context) {
  if (status != JH_OK) fail(status, context);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ModelGuard {
  jh_model* m = nullptr;
  ModelGuard(double alpha, double beta) {
    check(jh_model_create(alpha, beta, &m), "model construction");
  }
  ~ModelGuard() { jh_model_destroy(m); }
  ModelGuard(const ModelGuard&) = delete;
  ModelGuard& operator=(const ModelGuard&) = delete;
};

// CSV plus a .meta.json sidecar echoing the full configuration, so every
// artifact is reproducible from its own metadata.
void emit(const std::string& output, const std::string& csv, const json& meta) {
  if (output.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << output << " for writing\n";
    std::exit(kExitValidation);
  }
  file << csv;
  std::ofstream side(output + ".meta.json", std::ios::binary);
  side << meta.dump(2) << "\n";
  std::cout << "wrote " << output << " and " << output << ".meta.json\n";
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  if (points == 1) {
    g.push_back(lo);
    return g;
  }
  for (int i = 0; i < points; ++i) {
    g.push_back(std::pow(10.0, std::log10(lo) +
                                   (std::log10(hi) - std::log10(lo)) * i /
                                       (points - 1.0)));
  }
  return g;
}

std::vector<std::vector<double>> random_test_set(unsigned seed, int count,
                                                 int max_support) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> len(1, max_support + 1);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> f(static_cast<size_t>(len(rng)));
    for (double& x : f) x = val(rng);
    out.push_back(std::move(f));
  }
  return out;
}

struct SuiteResult {
  bool ok = true;
  std::ostringstream lines;

  void record(const std::string& name, bool pass, const std::string& detail) {
    lines << (pass ? "ok   " : "FAIL ") << name << ": " << detail << "\n";
    ok = ok && pass;
  }
};

// ---- verify suites ------------------------------------------------------

SuiteResult verify_positivity(jh_model* model, double alpha, double beta) {
  SuiteResult r;
  int k_min = 0;
  double worst_c = 0.0;
  int worst[3] = {-1, -1, -1};
  for (int m = 0; m <= 12; ++m) {
    for (int n = 0; n <= m; ++n) {
      std::vector<double> coeffs(static_cast<size_t>(2 * std::min(m, n) + 1));
      check(jh_linearization(model, m, n, coeffs.data(), &k_min), "linearization");
      for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] < worst_c) {
          worst_c = coeffs[i];
          worst[0] = k_min + static_cast<int>(i);
          worst[1] = m;
          worst[2] = n;
        }
      }
    }
  }
  if (worst_c < -1e-10) {
    std::ostringstream os;
    os << "negative coefficient c(k=" << worst[0] << ", m=" << worst[1]
       << ", n=" << worst[2] << ") = " << fmt(worst_c);
    r.record("linearization non-negativity", false, os.str());
  } else {
    r.record("linearization non-negativity", true,
             "min coefficient " + fmt(worst_c) + " over m,n <= 12");
  }

  if (alpha >= beta && beta >= -0.5) {
    double kernel_min = 0.0;
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      const int mmax = 25;
      std::vector<double> grid(static_cast<size_t>(mmax + 1) * (mmax + 1));
      check(jh_heat_kernel_grid(model, t, mmax, 0.0, grid.data()), "kernel grid");
      for (double v : grid) kernel_min = std::min(kernel_min, v);
    }
    r.record("kernel non-negativity", kernel_min >= -1e-12,
             "min kernel value " + fmt(kernel_min));

    double ht_min = 0.0, dual_gap = 0.0;
    for (double t : {0.5, 2.0, 8.0}) {
      for (int k = 0; k <= 10; ++k) {
        double direct = 0, rodrigues = 0;
        check(jh_h_t_coefficient(model, t, k, &direct, &rodrigues), "h_t");
        ht_min = std::min(ht_min, direct);
        dual_gap = std::max(dual_gap,
                            std::abs(direct - rodrigues) /
                                std::max({1.0, std::abs(direct), std::abs(rodrigues)}));
      }
    }
    r.record("h_t non-negativity", ht_min >= -1e-12, "min " + fmt(ht_min));
    r.record("h_t dual-formula agreement", dual_gap <= 1e-10,
             "relative gap " + fmt(dual_gap));
  }
  return r;
}

SuiteResult verify_semigroup(jh_model* model, int cases, unsigned seed) {
  SuiteResult r;
  const int trunc = 150;
  double worst = 0.0;
  const auto test_set = random_test_set(seed, cases, 20);
  for (const auto& f : test_set) {
    for (double t1 : {0.1, 1.0, 5.0}) {
      for (double t2 : {0.1, 5.0}) {
        std::vector<double> once(trunc + 1), inner(trunc + 1), twice(trunc + 1);
        check(jh_apply_heat(model, t1 + t2, f.data(), f.size(), trunc, once.data()),
              "apply_heat");
        check(jh_apply_heat(model, t2, f.data(), f.size(), trunc, inner.data()),
              "apply_heat");
        check(jh_apply_heat(model, t1, inner.data(), inner.size(), trunc, twice.data()),
              "apply_heat");
        double diff = 0.0;
        for (int n = 0; n <= trunc; ++n) {
          diff += (once[static_cast<size_t>(n)] - twice[static_cast<size_t>(n)]) *
                  (once[static_cast<size_t>(n)] - twice[static_cast<size_t>(n)]);
        }
        worst = std::max(worst, std::sqrt(diff));
      }
    }
  }
  r.record("semigroup law", worst < 1e-7, "max l2 residual " + fmt(worst));

  double worst_growth = 0.0;
  for (const auto& f : test_set) {
    double norm = 0.0;
    for (double v : f) norm += v * v;
    norm = std::sqrt(norm);
    for (double t : {0.0, 0.5, 3.0}) {
      std::vector<double> wf(trunc + 1);
      check(jh_apply_heat(model, t, f.data(), f.size(), trunc, wf.data()),
            "apply_heat");
      double out = 0.0;
      for (double v : wf) out += v * v;
      worst_growth = std::max(worst_growth, std::sqrt(out) - norm);
    }
  }
  r.record("l2 contraction", worst_growth <= 1e-12,
           "max norm growth " + fmt(worst_growth));
  return r;
}

SuiteResult verify_chapman(jh_model* model) {
  SuiteResult r;
  double worst = 0.0;
  const double cases[][4] = {
      {0.0, 0.0, 4, 4}, {1.0, 2.0, 0, 4}, {0.5, 1.5, 2, 3}, {0.0, 2.0, 1, 5}};
  for (const auto& c : cases) {
    double resid = 0.0;
    check(jh_chapman_residual(model, c[0], c[1], static_cast<int>(c[2]),
                              static_cast<int>(c[3]), 120, &resid),
          "chapman residual");
    worst = std::max(worst, resid);
  }
  r.record("chapman-kolmogorov", worst < 1e-8, "max residual " + fmt(worst));
  return r;
}

SuiteResult verify_lemma51(int cases, unsigned seed) {
  SuiteResult r;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> par(-0.9, 2.0);
  std::uniform_real_distribution<double> time(0.0, 5.0);
  double worst = 0.0;
  int rejected = 0;
  auto run_case = [&](int n, int m) {
    const double a = par(rng), b = par(rng), A = par(rng), B = par(rng);
    const double al = par(rng), be = par(rng), t = time(rng);
    double direct = 0, rec = 0;
    const jh_status ds = jh_frak_i_direct(a, b, A, B, al, be, n, m, t, 0.0, &direct);
    check(ds, "frak_i_direct");
    const jh_status rs = jh_frak_i_recursive(a, b, A, B, al, be, n, m, t, 0.0, &rec);
    if (rs == JH_ERR_INVALID_ARGUMENT) {
      ++rejected;  // degenerate draw
      return;
    }
    check(rs, "frak_i_recursive");
    worst = std::max(worst, std::abs(direct - rec) / std::max(1.0, std::abs(direct)));
  };
  for (int i = 0; i < cases; ++i) {
    run_case(0, 1 + static_cast<int>(rng() % 6));
    run_case(1 + static_cast<int>(rng() % 6), 0);
    run_case(1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6));
  }
  std::ostringstream os;
  os << "max residual " << fmt(worst) << " over " << 3 * cases << " draws ("
     << rejected << " degenerate rejections)";
  r.record("integration-by-parts identity", worst < 1e-9, os.str());
  return r;
}

SuiteResult verify_bounds(jh_model* model, double alpha, double beta,
                          json* reports) {
  SuiteResult r;
  const auto base_grid = log_grid(1e-3, 1e3, 60);
  const auto fine_grid = log_grid(1e-3, 1e3, 120);
  const jh_bound_kind kinds[] = {JH_BOUND_LEMMA31, JH_BOUND_LEMMA41,
                                 JH_BOUND_LEMMA42, JH_BOUND_CZ_B1, JH_BOUND_CZ_B2};
  const char* names[] = {"lemma31", "lemma41", "lemma42", "cz_b1", "cz_b2"};
  for (int i = 0; i < 5; ++i) {
    jh_bound_report base, wide;
    check(jh_bound_constant(model, kinds[i], 1, 40, base_grid.data(),
                            base_grid.size(), &base),
          "bound constant");
    check(jh_bound_constant(model, kinds[i], 1, 80, fine_grid.data(),
                            fine_grid.size(), &wide),
          "bound constant");
    const double ratio = wide.constant / base.constant;
    std::ostringstream os;
    os << "C = " << fmt(wide.constant) << ", doubling ratio " << fmt(ratio);
    r.record(names[i], std::isfinite(wide.constant) && ratio < 1.10 && ratio > 0.90,
             os.str());
    if (reports) {
      reports->push_back(
          {{"kind", names[i]},
           {"alpha", alpha},
           {"beta", beta},
           {"constant", wide.constant},
           {"argmax", {{"m", wide.arg_m}, {"n", wide.arg_n}, {"t", wide.arg_t}}},
           {"index_range", {1, 80}},
           {"time_grid",
            {{"lo", 1e-3}, {"hi", 1e3}, {"points", fine_grid.size()}, {"spacing", "log"}}},
           {"doubling_ratio", ratio}});
    }
  }
  return r;
}

SuiteResult verify_ap() {
  SuiteResult r;
  std::vector<double> ones(2000, 1.0);
  bool unit_ok = true;
  for (double p : {1.0, 2.0, 3.0}) {
    for (int N : {100, 1000}) {
      double c = 0;
      check(jh_ap_constant(ones.data(), N, p, &c), "ap constant");
      unit_ok = unit_ok && (c == 1.0);
    }
  }
  r.record("unit weight", unit_ok, "constant exactly 1");

  std::vector<double> sub(2000), super(4000);
  for (size_t n = 0; n < sub.size(); ++n) sub[n] = std::pow(n + 1.0, 0.3);
  for (size_t n = 0; n < super.size(); ++n) super[n] = std::pow(n + 1.0, 1.5);
  double c1 = 0, c2 = 0;
  check(jh_ap_constant(sub.data(), 1000, 2.0, &c1), "ap constant");
  check(jh_ap_constant(sub.data(), 2000, 2.0, &c2), "ap constant");
  r.record("power weight 0.3 stabilizes", c2 / c1 < 1.05,
           "ratio " + fmt(c2 / c1));
  check(jh_ap_constant(super.data(), 2000, 2.0, &c1), "ap constant");
  check(jh_ap_constant(super.data(), 4000, 2.0, &c2), "ap constant");
  r.record("power weight 1.5 grows", c2 / c1 > 1.2, "ratio " + fmt(c2 / c1));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete heat and Poisson semigroups for Jacobi recurrence operators"};
  app.require_subcommand(1);

  double alpha = 0.0, beta = 0.0, tol = 0.0;
  int threads = 0;
  app.add_option("--threads", threads, "Cap worker threads for grid jobs (0 = auto)")
      ->capture_default_str();

  std::string format = "csv";

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Tabulate the heat kernel grid; columns t,m,n,value");
  std::vector<double> kernel_times{1.0};
  int kernel_mmax = 10;
  std::string kernel_out;
  kernel_cmd->add_option("--alpha", alpha, "Jacobi parameter alpha > -1")->required();
  kernel_cmd->add_option("--beta", beta, "Jacobi parameter beta > -1")->required();
  kernel_cmd->add_option("--t", kernel_times, "Time values (repeatable)")
      ->capture_default_str();
  kernel_cmd->add_option("--mmax", kernel_mmax, "Grid covers 0..mmax in both indices")
      ->capture_default_str();
  kernel_cmd->add_option("--tol", tol, "Kernel quadrature tolerance (0 = default 1e-12)");
  kernel_cmd->add_option("--output", kernel_out, "Output path; stdout when omitted");
  kernel_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // apply / poisson
  auto* apply_cmd = app.add_subcommand(
      "apply", "Apply the heat operator W_t; trace columns t,n,value");
  auto* poisson_cmd = app.add_subcommand(
      "poisson", "Apply the Poisson operator P_t; trace columns t,n,value");
  std::vector<double> f_values{1.0};
  std::vector<double> op_times{1.0};
  int truncation = -1;
  int laguerre_nodes = 0;
  std::string op_out;
  for (CLI::App* cmd : {apply_cmd, poisson_cmd}) {
    cmd->add_option("--alpha", alpha)->required();
    cmd->add_option("--beta", beta)->required();
    cmd->add_option("--t", op_times, "Evolution times (repeatable)")
        ->capture_default_str();
    cmd->add_option("--f", f_values, "Input sequence values f(0), f(1), ...")
        ->delimiter(',');
    cmd->add_option("--truncation", truncation,
                    "Output index range 0..truncation (-1 = policy)");
    cmd->add_option("--output", op_out, "Output path; stdout when omitted");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }
  poisson_cmd->add_option("--laguerre-nodes", laguerre_nodes,
                          "Subordination node count (0 = default 64)");

  // maximal
  auto* maximal_cmd = app.add_subcommand(
      "maximal", "Grid maximal functions W_* f and P_* f; CSV (n,heat,poisson)");
  int max_nmax = 20, tpoints = 60;
  double tmin = 1e-3, tmax = 1e3;
  std::string max_out;
  maximal_cmd->add_option("--alpha", alpha)->required();
  maximal_cmd->add_option("--beta", beta)->required();
  maximal_cmd->add_option("--f", f_values, "Input sequence values")->delimiter(',');
  maximal_cmd->add_option("--nmax", max_nmax, "Profile covers n = 0..nmax")
      ->capture_default_str();
  maximal_cmd->add_option("--tmin", tmin, "Log grid start")->capture_default_str();
  maximal_cmd->add_option("--tmax", tmax, "Log grid end")->capture_default_str();
  maximal_cmd->add_option("--tpoints", tpoints, "Log grid size")->capture_default_str();
  maximal_cmd->add_option("--output", max_out, "CSV path; stdout when omitted");

  // linearize
  auto* lin_cmd = app.add_subcommand(
      "linearize", "Product expansion coefficients of p_m p_n; CSV (k,c)");
  int lin_m = 1, lin_n = 1;
  std::string lin_out;
  lin_cmd->add_option("--alpha", alpha)->required();
  lin_cmd->add_option("--beta", beta)->required();
  lin_cmd->add_option("--m", lin_m)->required();
  lin_cmd->add_option("--n", lin_n)->required();
  lin_cmd->add_option("--output", lin_out, "CSV path; stdout when omitted");

  // quadrature
  auto* quad_cmd = app.add_subcommand(
      "quadrature", "Gauss rule for the Jacobi measure; CSV (node,weight)");
  int quad_nodes = 16;
  std::string quad_out;
  quad_cmd->add_option("--alpha", alpha)->required();
  quad_cmd->add_option("--beta", beta)->required();
  quad_cmd->add_option("--nodes", quad_nodes, "Node count")->capture_default_str();
  quad_cmd->add_option("--output", quad_out, "CSV path; stdout when omitted");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run an invariant suite; exits 3 on any violation");
  std::string suite;
  int cases = 50;
  unsigned seed = 20240601;
  verify_cmd->add_option("suite", suite, "positivity | semigroup | chapman | lemma51 | bounds | ap")
      ->required();
  verify_cmd->add_option("--alpha", alpha, "Jacobi parameter alpha")->capture_default_str();
  verify_cmd->add_option("--beta", beta, "Jacobi parameter beta")->capture_default_str();
  verify_cmd->add_option("--cases", cases, "Random case count")->capture_default_str();
  verify_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  std::string verify_out;
  verify_cmd->add_option("--output", verify_out,
                         "JSON report path (bounds suite only)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time kernel grids and heat applications");
  int bench_mmax = 40;
  bench_cmd->add_option("--alpha", alpha)->capture_default_str();
  bench_cmd->add_option("--beta", beta)->capture_default_str();
  bench_cmd->add_option("--mmax", bench_mmax)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  if (kernel_cmd->parsed()) {
    ModelGuard model(alpha, beta);
    const size_t stride = static_cast<size_t>(kernel_mmax) + 1;
    std::vector<std::vector<double>> grids(kernel_times.size());
    std::vector<jh_status> statuses(kernel_times.size(), JH_OK);
    std::vector<std::string> messages(kernel_times.size());
    // parallel over t values; each slot is written by exactly one worker
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const int workers = std::min<int>(threads, static_cast<int>(kernel_times.size()));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < kernel_times.size();
             i = next.fetch_add(1)) {
          grids[i].resize(stride * stride);
          statuses[i] = jh_heat_kernel_grid(model.m, kernel_times[i], kernel_mmax,
                                            tol, grids[i].data());
          if (statuses[i] != JH_OK) messages[i] = jh_last_error();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (size_t i = 0; i < statuses.size(); ++i) {
      if (statuses[i] != JH_OK) {
        std::cerr << "error: kernel grid at t = " << fmt(kernel_times[i]) << ": "
                  << messages[i] << "\n";
        std::exit(exit_code_for(statuses[i]));
      }
    }
    const json meta{{"command", "kernel"}, {"alpha", alpha},
                    {"beta", beta},       {"t", kernel_times},
                    {"mmax", kernel_mmax}, {"tol", tol},
                    {"threads", threads}};
    std::string payload;
    if (format == "json") {
      json rows = json::array();
      for (size_t i = 0; i < kernel_times.size(); ++i) {
        for (int m = 0; m <= kernel_mmax; ++m) {
          for (int n = 0; n <= kernel_mmax; ++n) {
            rows.push_back({kernel_times[i], m, n,
                            grids[i][static_cast<size_t>(m) * stride + static_cast<size_t>(n)]});
          }
        }
      }
      payload = json{{"meta", meta}, {"columns", {"t", "m", "n", "value"}},
                     {"rows", rows}}
                    .dump(1) +
                "\n";
    } else {
      std::ostringstream csv;
      csv << "t,m,n,value\n";
      for (size_t i = 0; i < kernel_times.size(); ++i) {
        for (int m = 0; m <= kernel_mmax; ++m) {
          for (int n = 0; n <= kernel_mmax; ++n) {
            csv << fmt(kernel_times[i]) << ',' << m << ',' << n << ','
                << fmt(grids[i][static_cast<size_t>(m) * stride + static_cast<size_t>(n)])
                << "\n";
          }
        }
      }
      payload = csv.str();
    }
    emit(kernel_out, payload, meta);
    return 0;
  }

  if (apply_cmd->parsed() || poisson_cmd->parsed()) {
    const bool poisson = poisson_cmd->parsed();
    ModelGuard model(alpha, beta);
    int trunc = truncation;
    if (trunc < 0) {
      const double t_max = *std::max_element(op_times.begin(), op_times.end());
      trunc = jh_default_truncation(t_max, static_cast<int>(f_values.size()) - 1);
    }
    std::vector<std::vector<double>> trace(op_times.size());
    for (size_t i = 0; i < op_times.size(); ++i) {
      trace[i].resize(static_cast<size_t>(trunc) + 1);
      if (poisson) {
        check(jh_apply_poisson(model.m, op_times[i], f_values.data(),
                               f_values.size(), trunc, laguerre_nodes,
                               trace[i].data()),
              "poisson application");
      } else {
        check(jh_apply_heat(model.m, op_times[i], f_values.data(),
                            f_values.size(), trunc, trace[i].data()),
              "heat application");
      }
    }
    const json meta{{"command", poisson ? "poisson" : "apply"},
                    {"alpha", alpha},
                    {"beta", beta},
                    {"t", op_times},
                    {"f", f_values},
                    {"truncation", trunc},
                    {"laguerre_nodes", laguerre_nodes},
                    {"threads", threads}};
    std::string payload;
    if (format == "json") {
      json rows = json::array();
      for (size_t i = 0; i < op_times.size(); ++i) {
        for (int n = 0; n <= trunc; ++n) {
          rows.push_back({op_times[i], n, trace[i][static_cast<size_t>(n)]});
        }
      }
      payload = json{{"meta", meta}, {"columns", {"t", "n", "value"}}, {"rows", rows}}
                    .dump(1) +
                "\n";
    } else {
      std::ostringstream csv;
      csv << "t,n,value\n";
      for (size_t i = 0; i < op_times.size(); ++i) {
        for (int n = 0; n <= trunc; ++n) {
          csv << fmt(op_times[i]) << ',' << n << ','
              << fmt(trace[i][static_cast<size_t>(n)]) << "\n";
        }
      }
      payload = csv.str();
    }
    emit(op_out, payload, meta);
    return 0;
  }

  if (maximal_cmd->parsed()) {
    ModelGuard model(alpha, beta);
    const auto grid = log_grid(tmin, tmax, tpoints);
    std::vector<double> heat(static_cast<size_t>(max_nmax) + 1);
    std::vector<double> poisson(static_cast<size_t>(max_nmax) + 1);
    check(jh_maximal_heat_profile(model.m, f_values.data(), f_values.size(),
                                  max_nmax, grid.data(), grid.size(), heat.data()),
          "maximal heat profile");
    check(jh_maximal_poisson_profile(model.m, f_values.data(), f_values.size(),
                                     max_nmax, grid.data(), grid.size(),
                                     poisson.data()),
          "maximal poisson profile");
    std::ostringstream csv;
    csv << "n,heat_max,poisson_max\n";
    for (int n = 0; n <= max_nmax; ++n) {
      csv << n << ',' << fmt(heat[static_cast<size_t>(n)]) << ','
          << fmt(poisson[static_cast<size_t>(n)]) << "\n";
    }
    emit(max_out, csv.str(),
         json{{"command", "maximal"},
              {"alpha", alpha},
              {"beta", beta},
              {"f", f_values},
              {"nmax", max_nmax},
              {"tmin", tmin},
              {"tmax", tmax},
              {"tpoints", tpoints},
              {"threads", threads}});
    return 0;
  }

  if (lin_cmd->parsed()) {
    ModelGuard model(alpha, beta);
    std::vector<double> coeffs(static_cast<size_t>(2 * std::min(lin_m, lin_n) + 1));
    int k_min = 0;
    check(jh_linearization(model.m, lin_m, lin_n, coeffs.data(), &k_min),
          "linearization");
    std::ostringstream csv;
    csv << "k,c\n";
    for (size_t i = 0; i < coeffs.size(); ++i) {
      csv << (k_min + static_cast<int>(i)) << ',' << fmt(coeffs[i]) << "\n";
    }
    emit(lin_out, csv.str(),
         json{{"command", "linearize"},
              {"alpha", alpha},
              {"beta", beta},
              {"m", lin_m},
              {"n", lin_n},
              {"threads", threads}});
    return 0;
  }

  if (quad_cmd->parsed()) {
    ModelGuard model(alpha, beta);
    std::vector<double> nodes(static_cast<size_t>(quad_nodes));
    std::vector<double> weights(static_cast<size_t>(quad_nodes));
    check(jh_quadrature_rule(model.m, quad_nodes, nodes.data(), weights.data()),
          "quadrature rule");
    std::ostringstream csv;
    csv << "node,weight\n";
    for (int k = 0; k < quad_nodes; ++k) {
      csv << fmt(nodes[static_cast<size_t>(k)]) << ','
          << fmt(weights[static_cast<size_t>(k)]) << "\n";
    }
    emit(quad_out, csv.str(),
         json{{"command", "quadrature"},
              {"alpha", alpha},
              {"beta", beta},
              {"nodes", quad_nodes},
              {"threads", threads}});
    return 0;
  }

  if (verify_cmd->parsed()) {
    SuiteResult result;
    if (suite == "positivity") {
      ModelGuard model(alpha, beta);
      result = verify_positivity(model.m, alpha, beta);
    } else if (suite == "semigroup") {
      ModelGuard model(alpha, beta);
      result = verify_semigroup(model.m, std::max(1, cases / 2), seed);
    } else if (suite == "chapman") {
      ModelGuard model(alpha, beta);
      result = verify_chapman(model.m);
    } else if (suite == "lemma51") {
      result = verify_lemma51(cases, seed);
    } else if (suite == "bounds") {
      ModelGuard model(alpha, beta);
      json reports = json::array();
      result = verify_bounds(model.m, alpha, beta, &reports);
      if (!verify_out.empty()) {
        std::ofstream file(verify_out, std::ios::binary);
        file << json{{"command", "verify bounds"},
                     {"alpha", alpha},
                     {"beta", beta},
                     {"reports", reports}}
                    .dump(2)
             << "\n";
        std::cout << "wrote " << verify_out << "\n";
      }
    } else if (suite == "ap") {
      result = verify_ap();
    } else {
      std::cerr << "error: unknown suite '" << suite << "'\n";
      return kExitValidation;
    }
    std::cout << "suite " << suite << " (alpha=" << fmt(alpha)
              << ", beta=" << fmt(beta) << ", cases=" << cases
              << ", seed=" << seed << ")\n"
              << result.lines.str();
    if (!result.ok) {
      std::cout << "verify " << suite << ": VIOLATION\n";
      return kExitInvariant;
    }
    std::cout << "verify " << suite << ": ok\n";
    return 0;
  }

  if (bench_cmd->parsed()) {
    ModelGuard model(alpha, beta);
    std::cout << "benchmark alpha=" << fmt(alpha) << " beta=" << fmt(beta)
              << " mmax=" << bench_mmax << " threads=" << threads << "\n";
    std::cout << "task,ms\n";
    auto time_ms = [](auto&& fn) {
      const auto start = std::chrono::steady_clock::now();
      fn();
      const auto stop = std::chrono::steady_clock::now();
      return std::chrono::duration<double, std::milli>(stop - start).count();
    };
    const size_t stride = static_cast<size_t>(bench_mmax) + 1;
    std::vector<double> grid(stride * stride);
    for (double t : {0.1, 1.0, 10.0}) {
      const double ms = time_ms([&] {
        check(jh_heat_kernel_grid(model.m, t, bench_mmax, 0.0, grid.data()),
              "kernel grid");
      });
      char label[48];
      std::snprintf(label, sizeof(label), "kernel_grid_t%g,%.3f", t, ms);
      std::cout << label << "\n";
    }
    const int trunc = jh_default_truncation(5.0, 0);
    std::vector<double> f{1.0};
    std::vector<double> out(static_cast<size_t>(trunc) + 1);
    const double ms = time_ms([&] {
      check(jh_apply_heat(model.m, 5.0, f.data(), f.size(), trunc, out.data()),
            "heat application");
    });
    std::cout << "apply_heat_t5," << fmt(ms) << "\n";
    return 0;
  }

  return kExitValidation;
}
