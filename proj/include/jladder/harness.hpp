#pragma once

// Command-line front end: options and config files, the verification suites,
// report files and exit codes.
//
// Every subcommand reads an optional flat config file (--config, one
// `key = value` per line, keys spelled like the long flags without dashes);
// flags given on the command line override the file.
//
// Exit codes: 0 all checks passed, 1 only soft (asymptotic / trend) checks
// failed, 2 usage error or inadmissible parameters, 3 a hard check failed
// (exact identity, AM-GM, set geometry), 4 a computation failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>  // vendored

#include "critical_line.hpp"
#include "errors.hpp"
#include "formulas.hpp"
#include "ladder.hpp"
#include "primes.hpp"
#include "report.hpp"

namespace jladder {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCacheDirEnv = "JLADDER_CACHE_DIR";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int soft_failure = 1;
inline constexpr int usage = 2;
inline constexpr int hard_failure = 3;
inline constexpr int failure = 4;
}  // namespace exit_code

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identity-6.1", "theorem-2.1",    "factorization-1.7",
                                              "mean-values",  "geo-means",      "proof-chain",
                                              "set-properties", "rh-table",     "zero-gap"};
  return names;
}

/// $JLADDER_CACHE_DIR, else ./jladder-cache.
inline std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return "jladder-cache";
}

/// ISO 8601 UTC; SOURCE_DATE_EPOCH pins the clock for reproducible reports.
inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde && *sde) {
    char* end = nullptr;
    const long long v = std::strtoll(sde, &end, 10);
    if (end && *end == '\0') now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// Options

struct LadderOptions {
  double t_min = 100.0;
  double t_max = 1.02e6;
  double tol = 1e-10;
  std::size_t grid_nodes = 10'000;
  std::string cache_dir;

  [[nodiscard]] LadderConfig config() const {
    LadderConfig c;
    c.t_min = t_min;
    c.t_max = t_max;
    c.hl_rel_tol = tol;
    c.grid_nodes = grid_nodes;
    return c;
  }
  [[nodiscard]] std::filesystem::path cache_path() const {
    return cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);
  }
};

struct VerifyOptions {
  std::string suite;
  std::vector<double> T{1e4};
  double U = 0.0;         // > 0 overrides the policy
  std::string u_policy;   // max | sqrt | unit; empty = suite default
  int l = 0;              // 0 = suite default sweep
  int n = -1;             // -1 = suite default sweep
  std::string partition;  // "1+2"; empty = all proper partitions
  double epsilon = 0.1;
  int l0 = 5;
  double a_const = 1.0;
  double epsilon0 = 1.0 / 12.0;
  double near = 1e4;
  std::string taus = "witness";  // witness | midpoint
  double rel_tol = 1e-8;
  std::string out;
  std::string format = "csv";
  unsigned jobs = 0;  // 0 = hardware threads
  LadderOptions ladder;

  /// Everything that influences the records, in a fixed order.
  [[nodiscard]] std::string canonical() const {
    std::ostringstream s;
    s << "suite=" << suite << "|T=";
    for (const double t : T) s << detail::format_real(t) << ';';
    s << "|U=" << detail::format_real(U) << "|policy=" << u_policy << "|l=" << l << "|n=" << n
      << "|partition=" << partition << "|epsilon=" << detail::format_real(epsilon) << "|L0=" << l0
      << "|A=" << detail::format_real(a_const) << "|eps0=" << detail::format_real(epsilon0)
      << "|near=" << detail::format_real(near) << "|taus=" << taus << "|rel_tol=" << detail::format_real(rel_tol)
      << "|ladder=" << ladder.config().cache_key();
    return s.str();
  }
  [[nodiscard]] std::string config_hash() const { return fnv1a_hex(canonical()); }
};

inline double u_from_policy(const std::string& policy, double big_t) {
  if (policy == "max") return max_admissible_u(big_t);
  if (policy == "sqrt") return std::sqrt(big_t);
  if (policy == "unit") return 1.0;
  throw DomainError("unknown U policy '" + policy + "' (expected max, sqrt or unit)");
}

inline double suite_u(const VerifyOptions& o, double big_t) {
  if (o.U > 0.0) return o.U;
  if (!o.u_policy.empty()) return u_from_policy(o.u_policy, big_t);
  return u_from_policy(o.suite == "rh-table" ? "unit" : "max", big_t);
}

// ---------------------------------------------------------------------------
// Suites

namespace detail {

// Desk-scale band for an asymptotic ratio with `factors` zeta factors per
// integrand: 30% up to two factors, [0.5, 2] beyond.
inline bool in_desk_band(double ratio, int factors) {
  if (!std::isfinite(ratio)) return false;
  return factors <= 2 ? std::abs(ratio - 1.0) <= 0.3 : (ratio >= 0.5 && ratio <= 2.0);
}

inline bool finite_positive(const RatioRecord& r) {
  return std::isfinite(r.lhs) && std::isfinite(r.rhs) && r.lhs > 0.0 && r.rhs > 0.0;
}

inline std::string tag(const RatioRecord& r) {
  std::ostringstream s;
  s << r.label << " T=" << format_real(r.T) << " l=" << r.l << " n=" << r.n;
  return s.str();
}

inline std::string ratio_detail(const RatioRecord& r) {
  std::ostringstream s;
  s.precision(10);
  s << "ratio " << r.ratio << ", est_error " << r.est_error;
  return s.str();
}

inline void push_ratio(ExperimentReport& rep, const RatioRecord& r, const std::string& family, int factors) {
  rep.records.push_back(r);
  rep.check("finite positive: " + tag(r), family, true, finite_positive(r));
  rep.check("desk band: " + tag(r), family, false, in_desk_band(r.ratio, factors), ratio_detail(r));
}

// Proper partitions of n + 1 with parts in [1, n], parts non-decreasing.
inline void partitions_into(int remaining, int min_part, int max_part, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    if (cur.size() >= 2) out.push_back(cur);
    return;
  }
  for (int a = min_part; a <= std::min(remaining, max_part); ++a) {
    cur.push_back(a);
    partitions_into(remaining - a, a, max_part, cur, out);
    cur.pop_back();
  }
}

inline std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, '+')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("bad partition '" + text + "' (expected e.g. 1+2)");
    }
  }
  return parts;
}

// Runs tasks on up to `jobs` threads; results come back in task order, so the
// merged report does not depend on scheduling.
inline std::vector<ExperimentReport> run_parallel(const std::vector<std::function<ExperimentReport()>>& tasks,
                                                  unsigned jobs) {
  std::vector<ExperimentReport> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()));
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::lock_guard lock(mu);
        if (next >= tasks.size()) return;
        i = next++;
      }
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace detail

/// One soft check per (label, l, n) family seen at two or more T:
/// |ratio - 1| non-increasing in T.
inline void add_trend_checks(ExperimentReport& report, const std::set<std::string>& labels) {
  std::map<std::tuple<std::string, int, int>, std::map<double, double>> families;
  for (const auto& r : report.records) {
    if (labels.count(r.label)) families[{r.label, r.l, r.n}][r.T] = r.ratio;
  }
  for (const auto& [key, by_t] : families) {
    if (by_t.size() < 2) continue;
    std::vector<double> ratios;
    std::ostringstream detail;
    detail.precision(6);
    for (const auto& [t, ratio] : by_t) {
      ratios.push_back(ratio);
      detail << "T=" << t << ": |r-1|=" << std::abs(ratio - 1.0) << "; ";
    }
    const auto& [label, l, n] = key;
    report.check("trend: " + label + " l=" + std::to_string(l) + " n=" + std::to_string(n), label, false,
                 trend_non_increasing(ratios), detail.str());
  }
}

/// Runs one suite. Needs the prime table only for set-properties.
inline ExperimentReport run_suite(const VerifyOptions& o, const LadderModel& model, const PrimeCounter* primes,
                                  std::ostream* log = nullptr) {
  QuadratureConfig quad;
  quad.rel_tol = o.rel_tol;
  quad.validate();
  const std::string& s = o.suite;
  std::vector<std::function<ExperimentReport()>> tasks;
  std::set<std::string> trend_labels;

  if (s == "identity-6.1") {
    const int n_max = o.n >= 1 ? o.n : 4;
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      require_admissible_u(big_t, u, "identity-6.1");
      for (int n = 1; n <= n_max; ++n) {
        for (int l = 1; l <= n; ++l) {
          if (o.l > 0 && l != o.l) continue;
          tasks.emplace_back([&model, &quad, big_t, u, n, l] {
            ExperimentReport rep;
            const auto r = verify_identity_61(model, big_t, u, n, l, quad);
            rep.records.push_back(r);
            rep.check("exact: " + detail::tag(r), "identity-6.1", true, std::abs(r.ratio - 1.0) <= 1e-5,
                      detail::ratio_detail(r));
            return rep;
          });
        }
      }
    }
  } else if (s == "theorem-2.1") {
    const int l_max = o.l >= 1 ? o.l : 3;
    trend_labels.insert("thm-2.1");
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      require_admissible_u(big_t, u, "theorem-2.1");
      for (int l = 1; l <= l_max; ++l) {
        tasks.emplace_back([&model, &quad, big_t, u, l] {
          ExperimentReport rep;
          detail::push_ratio(rep, conjugate_ratio(model, big_t, u, l, quad), "thm-2.1", l);
          return rep;
        });
      }
    }
  } else if (s == "factorization-1.7") {
    std::vector<std::pair<int, std::vector<int>>> cases;
    if (!o.partition.empty()) {
      auto parts = detail::parse_partition(o.partition);
      int sum = 0;
      for (const int a : parts) sum += a;
      cases.emplace_back(o.n >= 1 ? o.n : sum - 1, parts);
    } else {
      const int n_max = o.n >= 1 ? o.n : 2;
      for (int n = 1; n <= n_max; ++n) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        detail::partitions_into(n + 1, 1, n, cur, parts);
        for (auto& p : parts) cases.emplace_back(n, p);
      }
    }
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      for (const auto& [n, parts] : cases) {
        tasks.emplace_back([&model, &quad, big_t, u, n = n, parts = parts] {
          ExperimentReport rep;
          const auto r = factorization_ratio(model, big_t, u, n, parts, quad);
          rep.records.push_back(r);
          rep.check("finite positive: " + detail::tag(r), "fact-1.7", true, detail::finite_positive(r));
          rep.check("desk band: " + detail::tag(r), "fact-1.7", false, r.ratio >= 0.5 && r.ratio <= 2.0,
                    detail::ratio_detail(r));
          return rep;
        });
      }
    }
    // every partition is its own family: the label carries the parts
    for (const auto& [n, parts] : cases) {
      std::vector<int> sorted = parts;  // records label the sorted parts
      std::sort(sorted.begin(), sorted.end());
      std::string label = "fact-1.7[";
      for (std::size_t i = 0; i < sorted.size(); ++i) label += (i ? "+" : "") + std::to_string(sorted[i]);
      trend_labels.insert(label + "]");
    }
  } else if (s == "mean-values") {
    const int l_max = o.l >= 1 ? o.l : 2;
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      for (int l = 1; l <= l_max; ++l) {
        for (const auto variant : {MeanValueVariant::cor1, MeanValueVariant::cor2}) {
          tasks.emplace_back([&model, &quad, big_t, u, l, variant] {
            ExperimentReport rep;
            const auto w = external_mean_value(model, big_t, u, l, variant, quad);
            const double replay = replay_witness(model, w, quad);
            const std::string label = variant == MeanValueVariant::cor1 ? "cor1-3.3" : "cor2-3.4";
            const auto r = make_record(label, big_t, u, l, 2 * l, w.achieved, w.target, replay);
            rep.records.push_back(r);
            std::ostringstream taus;
            taus.precision(15);
            taus << "t_l " << w.t_l << "; alpha_l " << w.alpha_l;
            for (const auto& h : w.taus) taus << "; tau_" << h.k << " " << h.tau << " in (" << h.lo << ", " << h.hi << ")";
            rep.check("taus inside hosts: " + detail::tag(r), "mean-values", true, w.all_inside(), taus.str());
            rep.check("root residual <= 1e-9: " + detail::tag(r), "mean-values", true, w.residual <= 1e-9,
                      detail::format_real(w.residual));
            rep.check("replay residual <= 1e-9: " + detail::tag(r), "mean-values", true, replay <= 1e-9,
                      detail::format_real(replay));
            return rep;
          });
        }
      }
    }
  } else if (s == "geo-means") {
    const int l_max = o.l >= 1 ? o.l : 4;
    if (o.taus != "witness" && o.taus != "midpoint") throw DomainError("--taus must be witness or midpoint");
    trend_labels.insert("geo-4.5");
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      require_admissible_u(big_t, u, "geo-means");
      for (int l = 1; l <= l_max; ++l) {
        tasks.emplace_back([&model, &quad, &o, big_t, u, l] {
          ExperimentReport rep;
          std::vector<double> taus;
          std::string mode = o.taus;
          if (mode == "witness") {
            try {
              taus = witness_taus(external_mean_value(model, big_t, u, l, MeanValueVariant::cor2, quad),
                                  external_mean_value(model, big_t, u, l, MeanValueVariant::cor1, quad));
            } catch (const ConvergenceError& e) {
              rep.check("witness taus found: T=" + detail::format_real(big_t) + " l=" + std::to_string(l),
                        "geo-means", false, false, std::string(e.what()) + "; midpoints used");
              mode = "midpoint";
            }
          }
          if (mode == "midpoint") taus = midpoint_taus(model, big_t, u, l);
          const auto g = geometric_mean_report(model, big_t, u, l, taus, o.epsilon);
          const auto r = make_record("geo-4.5", big_t, u, l, 2 * l, g.g_bar, g.omega, 0.0);
          rep.records.push_back(r);
          rep.records.push_back(make_record("amgm-4.5", big_t, u, l, 2 * l, (1.0 + g.min_margin()) * g.g_bar,
                                            g.g_bar, 0.0));
          std::size_t expected = 1;
          for (int k = 2; k <= l; ++k) expected *= static_cast<std::size_t>(k * k);
          rep.check("AM >= GM over all (l!)^2 orderings: " + detail::tag(r), "geo-means", true,
                    g.inequalities.size() == expected && g.min_margin() >= -1e-12,
                    std::to_string(g.inequalities.size()) + " inequalities, min margin " +
                        detail::format_real(g.min_margin()) + ", taus " + mode);
          rep.check("conditional AM > (1-eps) Omega: " + detail::tag(r), "geo-means", false, g.all_conditional(),
                    "eps " + detail::format_real(g.epsilon));
          rep.check("G/Omega within 1 +- eps: " + detail::tag(r), "geo-means", false, g.ratio_within_epsilon(),
                    detail::ratio_detail(r));
          return rep;
        });
      }
    }
  } else if (s == "proof-chain") {
    const int n_max = o.n >= 0 ? o.n : 3;
    trend_labels.insert({"chain-6.3", "chain-6.4", "chain-6.5", "chain-6.6"});
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      for (int n = 0; n <= n_max; ++n) {
        const int l = o.l >= 1 ? o.l : std::max(1, (n + 1) / 2);
        tasks.emplace_back([&model, &quad, big_t, u, n, l] {
          ExperimentReport rep;
          for (const auto& r : proof_chain_check(model, big_t, u, n, l, quad)) {
            rep.records.push_back(r);
            rep.check("finite positive: " + detail::tag(r), r.label, true, detail::finite_positive(r));
            const bool band = r.label == "chain-6.4" && n == 0 ? std::abs(r.ratio - 1.0) <= 0.1
                                                               : detail::in_desk_band(r.ratio, n + 1);
            rep.check("desk band: " + detail::tag(r), r.label, false, band, detail::ratio_detail(r));
          }
          return rep;
        });
      }
    }
  } else if (s == "set-properties") {
    if (!primes) throw DomainError("set-properties needs a prime table");
    const int n_max = o.n >= 0 ? o.n : 6;
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      for (int n = 0; n <= n_max; ++n) {
        tasks.emplace_back([&model, primes, big_t, u, n] {
          ExperimentReport rep;
          const auto set = disconnected_set(model, big_t, u, n);
          const auto p = check_set_properties(set, *primes);
          const std::string where = "T=" + detail::format_real(big_t) + " n=" + std::to_string(n);
          rep.check("segments disjoint and ordered: " + where, "set-geometry", true, p.disjoint_ordered);
          auto family = [&](const std::vector<BoundCheck>& v, const char* label, const char* what) {
            std::string failing;
            for (const auto& b : v) {
              rep.records.push_back(make_record(label, big_t, u, b.k, n, b.measured, b.bound, 0.0));
              if (!b.holds) failing += " k=" + std::to_string(b.k);
            }
            rep.check(std::string(what) + ": " + where, "set-geometry", true, failing.empty(),
                      failing.empty() ? "" : "fails at" + failing);
          };
          family(p.lengths, "set-1.3-length", "length < T/((2n+5) ln T)");
          family(p.gaps, "set-1.3-gap", "gap > 0.18 T/ln T");
          family(p.distances, "set-2.5-distance", "distance > 0.17 pi(T)");
          if (p.macroscopic) {
            bool near_u = true;
            for (std::size_t i = 0; i < p.lengths.size(); ++i) {
              rep.records.push_back(make_record("set-1.5-length", big_t, u, p.lengths[i].k, n,
                                                p.lengths[i].measured, u, 0.0));
              near_u = near_u && p.length_over_u[i] >= 0.9 && p.length_over_u[i] <= 1.1;
            }
            rep.check("macroscopic length/U in [0.9, 1.1]: " + where, "set-geometry", false, near_u);
          }
          return rep;
        });
      }
    }
  } else if (s == "rh-table") {
    RhTableConfig cfg;
    cfg.epsilon0 = o.epsilon0;
    cfg.a_const = o.a_const;
    for (const double big_t : o.T) {
      const double u = suite_u(o, big_t);
      tasks.emplace_back([&model, cfg, big_t, u, l0 = o.l0] { return rh_gap_table(model, {big_t}, u, l0, cfg); });
    }
  } else if (s == "zero-gap") {
    const int l_max = o.l >= 1 ? o.l : 3;
    for (int l = 1; l <= l_max; ++l) {
      tasks.emplace_back([&model, &quad, near = o.near, l] {
        ExperimentReport rep;
        ZeroPair pair;
        const auto r = zero_gap_experiment(model, near, l, quad, &pair);
        rep.records.push_back(r);
        rep.check("finite positive: " + detail::tag(r), "zero-gap", true,
                  detail::finite_positive(r) && std::isfinite(r.ratio));
        const double u = pair.gamma_prime - pair.gamma;
        const double gap = mean_zero_gap(pair.gamma);
        rep.check("window within [0.1, 10] mean gaps: " + detail::tag(r), "zero-gap", false,
                  u >= 0.1 * gap && u <= 10.0 * gap, detail::format_real(u / gap) + " mean gaps");
        const auto id = verify_identity_61(model, pair.gamma, u, 2 * l - 1, l, quad);
        rep.records.push_back(id);
        rep.check("exact on the same window: " + detail::tag(id), "identity-6.1", true,
                  std::abs(id.ratio - 1.0) <= 1e-5, detail::ratio_detail(id));
        return rep;
      });
    }
  } else {
    throw DomainError("unknown suite '" + s + "'");
  }

  if (log) *log << s << ": " << tasks.size() << " task(s)\n" << std::flush;
  ExperimentReport report;
  for (const auto& part : detail::run_parallel(tasks, o.jobs)) report.append(part);
  add_trend_checks(report, trend_labels);
  return report;
}

/// Exit code for a finished report.
inline int report_exit_code(const ExperimentReport& report) {
  if (!report.hard_ok()) return exit_code::hard_failure;
  if (!report.soft_ok()) return exit_code::soft_failure;
  return exit_code::ok;
}

/// Human-readable summary: records, trend table, failing checks.
inline void print_report(std::ostream& out, const ExperimentReport& report) {
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %12s %12s %3s %3s %22s %22s %14s %10s\n", "label", "T", "U", "l", "n",
                "lhs", "rhs", "ratio", "est_err");
  out << line;
  for (const auto& r : report.records) {
    std::snprintf(line, sizeof line, "%-18s %12.6g %12.6g %3d %3d %22.15g %22.15g %14.10f %10.2e\n", r.label.c_str(),
                  r.T, r.U, r.l, r.n, r.lhs, r.rhs, r.ratio, r.est_error);
    out << line;
  }
  bool any_trend = false;
  for (const auto& c : report.checks) {
    if (c.name.rfind("trend: ", 0) != 0) continue;
    if (!any_trend) out << "trend table (|ratio - 1| by T):\n";
    any_trend = true;
    out << "  " << (c.passed ? "non-increasing " : "NOT monotone   ") << c.name.substr(7) << "  " << c.detail << "\n";
  }
  std::size_t hard_failed = 0;
  std::size_t soft_failed = 0;
  std::set<std::string> families;
  for (const auto& c : report.checks) {
    if (c.passed) continue;
    (c.hard ? hard_failed : soft_failed)++;
    families.insert(c.family);
    out << (c.hard ? "HARD FAIL " : "soft fail ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
        << "\n";
  }
  out << report.checks.size() << " checks, " << hard_failed << " hard and " << soft_failed << " soft failures\n";
  if (!families.empty()) {
    out << "failing families:";
    for (const auto& f : families) out << " " << f;
    out << "\n";
  }
}

/// Writes the report: CSV records at `path` plus the full JSON report at
/// `path.json`, or JSON only.
inline void write_report(const ExperimentReport& report, const std::filesystem::path& path, const std::string& format) {
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw FormatError("cannot open " + p.string() + " for writing");
    f << text;
    if (!f) throw FormatError("write failed for " + p.string());
  };
  if (format == "csv") {
    write(path, to_csv(report.records));
    write(path.string() + ".json", to_json(report));
  } else if (format == "json") {
    write(path, to_json(report));
  } else {
    throw DomainError("unknown format '" + format + "' (expected csv or json)");
  }
}

// ---------------------------------------------------------------------------
// Subcommands

namespace detail {

inline void add_ladder_flags(CLI::App& app, LadderOptions& o) {
  app.add_option("--t-min", o.t_min, "lower end of the ladder range")->capture_default_str();
  app.add_option("--t-max", o.t_max, "upper end of the ladder range")->capture_default_str();
  app.add_option("--tol", o.tol, "relative tolerance of the Hardy-Littlewood integral")->capture_default_str();
  app.add_option("--grid-nodes", o.grid_nodes, "nodes of the tabulated grid")->capture_default_str();
  app.add_option("--cache-dir", o.cache_dir, "cache directory")->envname(kCacheDirEnv);
}

// Returns -1 when parsing succeeded, else the exit code to return.
inline int parse_args(CLI::App& app, std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  app.set_config("--config", "", "flat key = value file; flags override it");
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return exit_code::usage;
  }
  return -1;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const AdmissibilityError& e) {
    err << "inadmissible parameters: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const RangeError& e) {
    err << "out of range: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

}  // namespace detail

/// build-ladder: builds (or finds in the cache) the ladder table and prints
/// a summary.
inline int cli_build_ladder(const std::vector<std::string>& args, std::ostream& out = std::cout,
                            std::ostream& err = std::cerr) {
  CLI::App app{"Build and cache the ladder table phi_1", "build-ladder"};
  LadderOptions o;
  detail::add_ladder_flags(app, o);
  if (const int code = detail::parse_args(app, args, out, err); code >= 0) return code;
  if (!(o.t_min < o.t_max)) {
    err << "usage error: --t-min must be below --t-max\n";
    return exit_code::usage;
  }
  return detail::guarded(err, [&] {
    const LadderConfig cfg = o.config();
    bool hit = false;
    const auto model = load_or_build_ladder(cfg, o.cache_path(), &out, &hit);
    out << "cache " << (hit ? "hit" : "miss") << ": " << ladder_cache_path(o.cache_path(), cfg).string() << "\n";
    out << "cache key " << cfg.cache_key() << "\n";
    out << "grid nodes " << model.grid().size() << " over [" << model.t_min() << ", " << model.t_max() << "]\n";
    out << "max relative Newton residual " << detail::format_real(model.calibration_residual()) << "\n";
    // the deficit is ~(1 - c) / ln t, so the band only holds from some t on
    double holds_from = NAN;
    for (std::size_t i = model.grid().size(); i-- > 0;) {
      const double t = model.grid()[i];
      const double y = model.phi1()[i];
      if (!(y <= t && y >= (1.0 - cfg.epsilon) * t)) break;
      holds_from = t;
    }
    out << "(1 - eps) t <= phi_1(t) <= t (eps = " << cfg.epsilon << ") holds on the grid from t = "
        << detail::format_real(holds_from) << "\n";
    out << "deficit ratio (t - phi_1(t)) ln t / ((1 - c) t):\n";
    for (const double t : {1e3, 1e4, 1e5, 1e6}) {
      if (t < model.t_min() || t > model.t_max()) continue;
      const double y = model.value(t);
      char line[96];
      std::snprintf(line, sizeof line, "  t = %-8g  phi_1 = %-22.15g  ratio = %.6f\n", t, y,
                    (t - y) * std::log(t) / ((1.0 - kEulerGamma) * t));
      out << line;
    }
    return exit_code::ok;
  });
}

/// verify: runs one suite and writes its report.
inline int cli_verify(const std::vector<std::string>& args, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  CLI::App app{"Run a verification suite", "verify"};
  VerifyOptions o;
  app.add_option("--suite", o.suite, "suite id")->required();
  app.add_option("--T", o.T, "base ordinates T (one or more)")->capture_default_str();
  app.add_option("--U", o.U, "window length U (overrides --U-policy)");
  app.add_option("--U-policy", o.u_policy, "max (T/ln^2 T), sqrt (T^1/2) or unit (1)")
      ->check(CLI::IsMember({"max", "sqrt", "unit"}));
  app.add_option("--l", o.l, "level l (suite sweeps 1..l, or the single l where stated)");
  app.add_option("--n", o.n, "order n (suite sweeps up to n)");
  app.add_option("--partition", o.partition, "factorization partition, e.g. 1+2");
  app.add_option("--epsilon", o.epsilon, "epsilon of the conditional geometric-mean inequalities")
      ->capture_default_str();
  app.add_option("--L0", o.l0, "deepest level of the gap table")->capture_default_str();
  app.add_option("--A", o.a_const, "constant A of the per-level gap envelope")->capture_default_str();
  app.add_option("--eps0", o.epsilon0, "U <= T^(1/3 - eps0) in the gap table")->capture_default_str();
  app.add_option("--near", o.near, "seed ordinate for the zero-gap window")->capture_default_str();
  app.add_option("--taus", o.taus, "witness or midpoint")->check(CLI::IsMember({"witness", "midpoint"}))
      ->capture_default_str();
  app.add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")->capture_default_str();
  app.add_option("--out", o.out, "report path");
  app.add_option("--format", o.format, "csv (plus <out>.json) or json")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  detail::add_ladder_flags(app, o.ladder);
  if (const int code = detail::parse_args(app, args, out, err); code >= 0) return code;
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    err << "usage error: unknown suite '" << o.suite << "'; known:";
    for (const auto& n : names) err << " " << n;
    err << "\n";
    return exit_code::usage;
  }
  return detail::guarded(err, [&] {
    ExperimentReport report;
    report.meta.tool_version = kToolVersion;
    report.meta.suite = o.suite;
    report.meta.config_hash = o.config_hash();
    report.meta.started_utc = utc_timestamp();
    const LadderConfig cfg = o.ladder.config();
    report.meta.ladder_cache_key = cfg.cache_key();
    const auto model = load_or_build_ladder(cfg, o.ladder.cache_path(), &err);
    std::optional<PrimeCounter> primes;
    if (o.suite == "set-properties") {
      const double t_hi = *std::max_element(o.T.begin(), o.T.end());
      primes.emplace(PrimeCounter::load_or_build(o.ladder.cache_path(), static_cast<std::uint64_t>(t_hi) + 1));
    }
    const auto body = run_suite(o, model, primes ? &*primes : nullptr, &err);
    report.append(body);
    report.meta.finished_utc = utc_timestamp();
    print_report(out, report);
    if (!o.out.empty()) {
      write_report(report, o.out, o.format);
      out << "report written to " << o.out << (o.format == "csv" ? " (+ .json)" : "") << "\n";
    }
    return report_exit_code(report);
  });
}

/// zeros: consecutive zero pairs of Z from an ordinate on.
inline int cli_zeros(const std::vector<std::string>& args, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  CLI::App app{"List consecutive zeros of Hardy's Z", "zeros"};
  double near = 14.0;
  int count = 1;
  double max_span = 1e6;
  app.add_option("--near", near, "start ordinate (>= 10)")->required();
  app.add_option("--count", count, "number of consecutive pairs")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--max-span", max_span, "give up beyond near + max-span")->capture_default_str();
  if (const int code = detail::parse_args(app, args, out, err); code >= 0) return code;
  return detail::guarded(err, [&] {
    if (!(near >= 10.0)) throw DomainError("--near must be >= 10");
    std::vector<double> zeros;
    double span = (count + 2) * mean_zero_gap(near);
    while (count > 0 && static_cast<int>(zeros.size()) < count + 1) {
      if (span > max_span) {
        throw SearchExhaustedError("zeros: fewer than " + std::to_string(count + 1) + " zeros in [" +
                                   detail::format_real(near) + ", " + detail::format_real(near + max_span) + "]");
      }
      zeros = scan_zeros(near, near + std::min(span, max_span));
      span *= 2.0;
    }
    out << "gamma,gamma_next,gap,max_abs_z\n";
    char line[128];
    for (int i = 0; i < count; ++i) {
      const double g0 = zeros[i];
      const double g1 = zeros[i + 1];
      const double res = std::max(std::abs(hardy_z(g0)), std::abs(hardy_z(g1)));
      std::snprintf(line, sizeof line, "%.15g,%.15g,%.6g,%.3g\n", g0, g1, g1 - g0, res);
      out << line;
    }
    return exit_code::ok;
  });
}

/// Dispatches `jladder <subcommand> ...`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  const std::string usage =
      "usage: jladder <build-ladder|verify|zeros> [options]\n"
      "       jladder <subcommand> --help\n";
  if (argc < 2) {
    err << usage;
    return exit_code::usage;
  }
  const std::string cmd = argv[1];
  const std::vector<std::string> rest(argv + 2, argv + argc);
  if (cmd == "build-ladder") return cli_build_ladder(rest, out, err);
  if (cmd == "verify") return cli_verify(rest, out, err);
  if (cmd == "zeros") return cli_zeros(rest, out, err);
  if (cmd == "--help" || cmd == "-h") {
    out << usage;
    return exit_code::ok;
  }
  if (cmd == "--version") {
    out << "jladder " << kToolVersion << "\n";
    return exit_code::ok;
  }
  err << "unknown subcommand '" << cmd << "'\n" << usage;
  return exit_code::usage;
}

}  // namespace jladder
