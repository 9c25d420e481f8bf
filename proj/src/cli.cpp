#include "dcos/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "dcos/census.hpp"
#include "dcos/chain.hpp"
#include "dcos/closedform.hpp"
#include "dcos/errors.hpp"
#include "dcos/intersect.hpp"
#include "dcos/prob.hpp"
#include "dcos/sylow.hpp"
#include "dcos/table1.hpp"
#include "dcos/witness.hpp"

namespace dcos::cli {

using json = nlohmann::ordered_json;

namespace {

int default_threads() {
  if (const char* env = std::getenv("DCOS_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

json census_json(const CensusTable& c) {
  json j;
  j["n"] = c.n;
  j["p"] = c.p;
  j["m"] = c.m;
  j["method"] = c.method;
  json counts = json::array();
  for (size_t k = 0; k < c.counts.size(); ++k) {
    json e;
    e["k"] = k;
    e["count"] = c.counts[k].str();
    counts.push_back(e);
  }
  j["counts"] = counts;
  j["total"] = c.total.str();
  return j;
}

std::string census_csv(const CensusTable& c) {
  std::ostringstream out;
  out << "k,size_exponent,count\n";
  for (size_t k = 0; k < c.counts.size(); ++k)
    out << k << "," << c.m + k << "," << c.counts[k].str() << "\n";
  return out.str();
}

json sampled_json(const SampledCensus& s) {
  json j;
  j["n"] = s.n;
  j["p"] = s.p;
  j["m"] = s.m;
  j["method"] = "sampled";
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  json mass = json::array();
  for (size_t k = 0; k < s.hits.size(); ++k) {
    json e;
    e["k"] = k;
    e["hits"] = s.hits[k];
    e["mass"] = s.samples ? static_cast<double>(s.hits[k]) / s.samples : 0.0;
    double lo, hi;
    wilson_interval(s.hits[k], s.samples, lo, hi);
    e["ci95"] = {lo, hi};
    mass.push_back(e);
  }
  j["mass"] = mass;
  return j;
}

json estimate_json(const EstimateReport& r) {
  json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["hits"] = r.hits;
  j["p_hat"] = r.p_hat;
  j["ci95"] = {r.ci_lo, r.ci_hi};
  return j;
}

void emit(const std::string& text, const std::string& out_path,
          std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << text;
  err << "wrote " << out_path << "\n";
}

// ---- verify ---------------------------------------------------------------

struct CheckResult {
  std::string status;  // pass | fail | skip
  std::string expected;
  std::string actual;
  std::string reason;
};

struct Check {
  std::string name;
  int tier;  // 0 = quick, 1 = default, 2 = full
  std::function<CheckResult()> fn;
};

CheckResult pass_fail(bool ok, const std::string& expected,
                      const std::string& actual) {
  return {ok ? "pass" : "fail", expected, actual, ""};
}

std::vector<Check> build_checks(uint64_t seed, int threads) {
  std::vector<Check> checks;
  auto add = [&](std::string name, int tier, std::function<CheckResult()> fn) {
    checks.push_back({std::move(name), tier, std::move(fn)});
  };

  add("profile-legendre-agreement", 0, [] {
    for (int p : {2, 3, 5, 7, 11, 13})
      for (int n = 1; n <= 128; ++n) profile(n, p);  // throws on mismatch
    return pass_fail(true, "m formulas agree", "m formulas agree");
  });

  auto census_row_check = [](int n) {
    return [n]() {
      CensusTable c = census_exhaustive(n, 2);
      const auto& ref = p2_reference_counts()[n];
      bool ok = true;
      for (size_t k = 0; k < c.counts.size(); ++k) {
        const long expect = k < ref.size() ? ref[k] : 0;
        if (c.counts[k] != expect) ok = false;
      }
      std::ostringstream es, as;
      for (size_t k = 0; k < ref.size(); ++k) es << (k ? "," : "") << ref[k];
      for (size_t k = 0; k < c.counts.size(); ++k)
        as << (k ? "," : "") << c.counts[k].str();
      return pass_fail(ok, es.str(), as.str());
    };
  };
  for (int n = 1; n <= 9; ++n)
    add("census-p2-n" + std::to_string(n), 0, census_row_check(n));
  for (int n = 10; n <= 12; ++n)
    add("census-p2-n" + std::to_string(n), 1, census_row_check(n));
  for (int n = 13; n <= 14; ++n)
    add("census-p2-n" + std::to_string(n), 2, census_row_check(n));

  for (int n = 1; n <= 18; ++n) {
    add("class-total-p2-n" + std::to_string(n), n <= 12 ? 0 : 1, [n] {
      const BigInt t = total_via_classes(n, 2);
      const long expect = p2_reference_total(n);
      return pass_fail(t == expect, std::to_string(expect), t.str());
    });
  }

  add("census-vs-classes-6-3", 0, [] {
    CensusTable c = census_exhaustive(6, 3);
    const BigInt t = total_via_classes(6, 3);
    return pass_fail(c.total == t, t.str(), c.total.str());
  });

  add("min-size-lemma", 0, [] {
    bool ok = true;
    std::ostringstream as;
    for (auto [n, p] : {std::pair{6, 3}, {9, 3}, {7, 2}, {8, 2}, {10, 5}}) {
      CensusTable c = census_exhaustive(n, p);
      const BigInt expect = count_min_size(n, p);
      if (c.counts[0] != expect) {
        ok = false;
        as << "(" << n << "," << p << ") ";
      }
    }
    return pass_fail(ok, "counts[0] = |N:P|", ok ? "all match" : as.str());
  });

  add("second-size-small", 0, [] {
    bool ok = true;
    for (auto [n, p] : {std::pair{7, 2}, {9, 3}, {6, 3}, {10, 2}, {9, 2}}) {
      CensusTable c = census_exhaustive(n, p);
      if (c.counts[1] != second_size_count(n, p)) ok = false;
    }
    return pass_fail(ok, "counts[1] = second_size_count", ok ? "ok" : "bad");
  });
  add("second-size-grid", 1, [] {
    bool ok = true;
    std::ostringstream bad;
    for (auto [n, p] :
         {std::pair{12, 3}, {11, 5}, {11, 7}, {11, 11}, {12, 2}, {11, 2}}) {
      CensusTable c = census_exhaustive(n, p);
      if (c.counts[1] != second_size_count(n, p)) {
        ok = false;
        bad << "(" << n << "," << p << ") ";
      }
    }
    return pass_fail(ok, "counts[1] = second_size_count",
                     ok ? "ok" : bad.str());
  });
  add("second-size-p2-reference", 0, [] {
    bool ok = true;
    for (int n = 3; n <= 18; ++n) {
      const auto& ref = p2_reference_counts()[n];
      const long expect = ref.size() > 1 ? ref[1] : 0;
      if (second_size_count(n, 2) != expect) ok = false;
    }
    return pass_fail(ok, "column 2 for n <= 18", ok ? "ok" : "mismatch");
  });

  add("abelian-3-2-vs-census", 0, [] {
    AbelianCensus a = abelian_census(3, 2);
    CensusTable c = census_exhaustive(6, 3);
    bool ok = a.values.size() == 3;
    for (int i = 0; i < 3 && ok; ++i)
      ok = a.values[i] == c.counts[i];  // a = k..2k matches k = 0..m
    return pass_fail(ok, "(8,0,8)",
                     a.values[0].str() + "," + a.values[1].str() + "," +
                         a.values[2].str());
  });

  add("abelian-example-p11", 0, [] {
    AbelianCensus a = abelian_census(11, 1);
    const bool ok = a.values[0] == 10 && a.values[1] == 329890;
    return pass_fail(ok, "10,329890",
                     a.values[0].str() + "," + a.values[1].str());
  });

  add("abelian-np-closed-form", 0, [] {
    // n = p: n_1 = p-1, n_2 = ((p-1)! - (p-1))/p
    bool ok = true;
    for (int p : {3, 5, 7, 11, 13}) {
      AbelianCensus a = abelian_census(p, 1);
      const BigInt n2 =
          exact_div(big_factorial(p - 1) - (p - 1), p, "verify");
      if (a.values[0] != p - 1 || a.values[1] != n2) ok = false;
    }
    return pass_fail(ok, "n_1 = p-1, n_2 = ((p-1)!-(p-1))/p",
                     ok ? "ok" : "mismatch");
  });

  add("abelian-genfun-consistency", 0, [] {
    bool ok = true;
    for (int p : {3, 5, 7, 11, 13}) {
      for (int k = 1; k <= p - 1; ++k) {
        AbelianCensus a = abelian_census(p, k);
        GenFunCoefficients f = abelian_genfun(p, k);
        BigInt at1 = 0;
        for (const auto& c : f.coeff) at1 += c;
        if (at1 != big_factorial(static_cast<long>(k) * p)) ok = false;
        for (int aa = k; aa <= 2 * k; ++aa) {
          const BigInt na =
              exact_div(f.coeff[2 * k - aa], big_pow(p, aa), "verify");
          if (na != a.values[aa - k]) ok = false;
        }
      }
    }
    return pass_fail(ok, "n_a = [x^(2k-a)] f / p^a and f(1) = (kp)!",
                     ok ? "ok" : "mismatch");
  });

  add("abelian-mass-and-nk", 0, [] {
    bool ok = true;
    for (int p : {3, 5, 7, 11, 13}) {
      for (int k = 1; k <= p - 1; ++k) {
        AbelianCensus a = abelian_census(p, k);
        BigInt mass = 0;
        for (int aa = k; aa <= 2 * k; ++aa)
          mass += big_pow(p, aa) * a.values[aa - k];
        if (mass != big_factorial(static_cast<long>(k) * p)) ok = false;
        if (a.values[0] != big_factorial(k) * big_pow(p - 1, k)) ok = false;
      }
    }
    return pass_fail(ok, "sum p^a n_a = (kp)!, n_k = k!(p-1)^k",
                     ok ? "ok" : "mismatch");
  });

  add("thm33-bounds-grid", 0, [] {
    bool ok = true;
    for (int p : {3, 5, 7, 11, 13})
      for (int k = 1; k <= p - 1; ++k)
        if (!check_bounds_thm33(p, k).pass) ok = false;
    return pass_fail(ok, "lower <= n_2k <= upper", ok ? "ok" : "violated");
  });

  add("gamma-monotone", 0, [] {
    bool ok = true;
    for (int p : {3, 5, 7, 11, 13})
      for (int k = 1; k <= p - 1; ++k) {
        auto g = gamma_sequence(p, k);
        for (int j = 0; j + 1 < k; ++j)
          if (!(g[j + 1] < g[j])) ok = false;
      }
    return pass_fail(ok, "Gamma_{j+1} < Gamma_j", ok ? "ok" : "violated");
  });

  add("lemma-d-small", 0, [] {
    bool ok = true;
    std::ostringstream bad;
    for (auto [n, p] : {std::pair{4, 2}, {5, 2}, {6, 2}, {6, 3}}) {
      LemmaDReport r = verify_lemma_d(n, p);
      if (!r.pass) {
        ok = false;
        bad << "(" << n << "," << p << ") ";
      }
    }
    return pass_fail(ok, "identity holds", ok ? "ok" : bad.str());
  });
  add("lemma-d-large", 1, [] {
    bool ok = true;
    std::ostringstream bad;
    for (auto [n, p] : {std::pair{8, 2}, {9, 3}}) {
      LemmaDReport r = verify_lemma_d(n, p);
      if (!r.pass) {
        ok = false;
        bad << "(" << n << "," << p << ") ";
      }
    }
    return pass_fail(ok, "identity holds", ok ? "ok" : bad.str());
  });

  add("witness-exception-errors", 0, [seed] {
    CounterRng rng(seed, 901);
    bool ok = true;
    for (const auto& e : exceptions()) {
      try {
        construct_intersection(e[0], e[1], e[2], rng);
        ok = false;
      } catch (const impossible_error&) {
      }
    }
    return pass_fail(ok, "all six triples refused", ok ? "ok" : "constructed");
  });

  add("witness-exception-refutations-small", 0, [] {
    bool ok = true;
    for (const auto& e : {std::array<int, 3>{2, 2, 0},
                          {3, 3, 0},
                          {4, 2, 0},
                          {4, 2, 1},
                          {6, 3, 1}})
      if (!exception_refuted_exhaustively(e[0], e[1], e[2])) ok = false;
    return pass_fail(ok, "no witness exists", ok ? "ok" : "found witness");
  });
  add("witness-exception-refutation-8-2-0", 1, [] {
    const bool ok = exception_refuted_exhaustively(8, 2, 0);
    return pass_fail(ok, "no witness exists", ok ? "ok" : "found witness");
  });

  auto witness_grid = [](int nmax, uint64_t seed2) {
    return [nmax, seed2]() {
      CounterRng rng(seed2, 77);
      int built = 0;
      for (int p : {2, 3, 5, 7, 11, 13}) {
        for (int n = 1; n <= nmax; ++n) {
          const int m = profile(n, p).m;
          for (int k = 0; k <= m; ++k) {
            if (is_exception(n, p, k)) continue;
            construct_intersection(n, p, k, rng);  // throws on failure
            ++built;
          }
        }
      }
      return pass_fail(true, "all witnesses verified",
                       std::to_string(built) + " witnesses verified");
    };
  };
  add("witness-grid-n9", 0, witness_grid(9, seed));
  add("witness-grid-n12", 1, witness_grid(12, seed + 1));

  add("witness-lemma27", 0, [seed] {
    CounterRng rng(seed, 13);
    lemma27_pair(2, rng);
    lemma27_pair(3, rng);
    return pass_fail(true, "pairs verified", "pairs verified");
  });
  add("witness-lemma27-recursive", 1, [seed] {
    CounterRng rng(seed, 14);
    lemma27_pair(5, rng);  // n = 33, beyond enumeration scale
    return pass_fail(true, "pair verified", "pair verified");
  });

  add("estimate-exact-small", 0, [seed, threads] {
    bool ok = true;
    for (auto [n, p] : {std::pair{5, 2}, {6, 2}, {6, 3}, {5, 5}}) {
      const BigInt cnt = exact_f_count(n, p);
      const double f = BigRat(cnt, big_factorial(n)).convert_to<double>();
      EstimateReport r = estimate_f(n, p, 20000, seed, threads);
      const double se = std::sqrt(std::max(f * (1 - f), 1e-9) / 20000);
      if (std::abs(r.p_hat - f) > 4 * se + 1e-9) ok = false;
    }
    return pass_fail(ok, "estimate within 4 SE of exact",
                     ok ? "ok" : "outside");
  });

  add("model-equivalence", 0, [seed, threads] {
    bool ok = true;
    for (auto [n, p] : {std::pair{5, 2}, {6, 3}, {8, 2}}) {
      ModelEquivalenceReport r =
          check_model_equivalence(n, p, 20000, seed, threads);
      if (!r.intervals_overlap) ok = false;
    }
    return pass_fail(ok, "intervals overlap", ok ? "ok" : "disjoint");
  });

  add("matching-small-oracles", 0, [seed, threads] {
    // Pr(W>0) at n = 4 by full enumeration (8 of 24; the two blocks are
    // preserved together or not at all)
    int count = 0;
    std::vector<uint16_t> t = {0, 1, 2, 3};
    do {
      Permutation g{std::vector<uint16_t>(t.begin(), t.end())};
      if (matching_count(g) > 0) ++count;
    } while (std::next_permutation(t.begin(), t.end()));
    bool ok = (count == 8);
    EstimateReport r = estimate_w_positive(4, 200000, seed, threads);
    const double exact = count / 24.0;
    if (std::abs(r.p_hat - exact) > 0.01) ok = false;
    EstimateReport r2 = estimate_w_positive(2, 1000, seed, threads);
    if (r2.p_hat != 1.0) ok = false;
    return pass_fail(ok, "8/24 by enumeration, 1 at n=2",
                     ok ? "ok" : "mismatch");
  });

  add("matching-poisson-tv", 1, [seed, threads] {
    auto hist = matching_histogram(200, 100000, seed, threads);
    double tv = 0.0;
    double tail = 1.0;
    for (size_t w = 0; w < hist.size(); ++w) {
      const double pw = poisson_pmf(0.5, static_cast<int>(w));
      tail -= pw;
      tv += std::abs(static_cast<double>(hist[w]) / 100000.0 - pw);
    }
    tv = (tv + std::abs(tail)) / 2.0;
    return pass_fail(tv < 0.05, "TV < 0.05", std::to_string(tv));
  });

  add("estimate-f-p2-lower-bound", 1, [seed, threads] {
    EstimateReport r = estimate_f(50, 2, 10000, seed, threads);
    return pass_fail(r.p_hat >= 0.37, ">= 0.37", std::to_string(r.p_hat));
  });

  add("burnside-uniform-5-2", 1, [seed] {
    SylowStructure S = build_sylow(5, 2);
    StabilizerChain chain = build_chain(S);
    CensusTable c = census_exhaustive(5, 2);
    const long classes = c.total.convert_to<long>();
    std::map<std::string, uint64_t> visits;
    CounterRng rng(seed, 5150);
    Permutation x = Permutation::identity(5);
    const uint64_t steps = 100000;
    for (uint64_t s = 0; s < steps; ++s) {
      x = burnside_step(S, x, rng);
      visits[format_images(double_coset_canonical(S, chain, x))]++;
    }
    if (static_cast<long>(visits.size()) != classes)
      return pass_fail(false, std::to_string(classes) + " classes",
                       std::to_string(visits.size()) + " visited");
    double chi2 = 0.0;
    const double expect = static_cast<double>(steps) / classes;
    for (const auto& [key, cnt] : visits)
      chi2 += (cnt - expect) * (cnt - expect) / expect;
    const double cutoff = chi_square_quantile_99(static_cast<int>(classes) - 1);
    return pass_fail(chi2 < cutoff, "chi2 < " + std::to_string(cutoff),
                     std::to_string(chi2));
  });

  add("determinism-byte-identical", 0, [seed, threads] {
    std::ostringstream a, b, e;
    std::vector<std::string> cmd = {"census",  "7",    "2",
                                    "--method", "sampled", "--samples",
                                    "2000",    "--seed",   std::to_string(seed)};
    std::vector<std::string> cmd1 = cmd;
    cmd1.push_back("--threads");
    cmd1.push_back("1");
    std::vector<std::string> cmd8 = cmd;
    cmd8.push_back("--threads");
    cmd8.push_back("8");
    run(cmd1, a, e);
    run(cmd8, b, e);
    (void)threads;
    return pass_fail(a.str() == b.str(), "identical bytes across threads",
                     a.str() == b.str() ? "identical" : "differs");
  });

  return checks;
}

int run_verify(int tier, bool timings, uint64_t seed, int threads,
               std::ostream& out, std::ostream& err) {
  auto checks = build_checks(seed, threads);
  json report;
  json items = json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : checks) {
    if (c.tier > tier) continue;
    json item;
    item["name"] = c.name;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = c.fn();
    } catch (const budget_error& e) {
      r = {"skip", "", "", std::string("budget: ") + e.what()};
    } catch (const std::exception& e) {
      r = {"fail", "", "", e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    item["status"] = r.status;
    if (!r.expected.empty()) item["expected"] = r.expected;
    if (!r.actual.empty()) item["actual"] = r.actual;
    if (!r.reason.empty()) item["reason"] = r.reason;
    if (timings) item["seconds"] = secs;
    err << "[" << r.status << "] " << c.name;
    if (r.status == "fail")
      err << " (expected " << r.expected << ", got " << r.actual << ") "
          << r.reason;
    err << "\n";
    if (r.status == "pass") ++passed;
    else if (r.status == "fail") ++failed;
    else ++skipped;
    items.push_back(item);
  }
  report["checks"] = items;
  report["passed"] = passed;
  report["failed"] = failed;
  report["skipped"] = skipped;
  out << report.dump(2) << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"double cosets of Sylow p-subgroups of the symmetric group"};
  app.require_subcommand(1);

  // info
  auto* info = app.add_subcommand("info", "p-adic profile and Sylow data");
  int info_n = 0, info_p = 0;
  info->add_option("n", info_n, "degree")->required();
  info->add_option("p", info_p, "prime")->required();

  // census
  auto* census = app.add_subcommand("census", "double-coset census");
  int cen_n = 0, cen_p = 0;
  std::string cen_method = "exhaustive";
  uint64_t cen_samples = 100000;
  uint64_t cen_seed = kDefaultSeed;
  int cen_threads = default_threads();
  std::string cen_out;
  census->add_option("n", cen_n)->required();
  census->add_option("p", cen_p)->required();
  census->add_option("--method", cen_method)
      ->check(CLI::IsMember({"exhaustive", "sampled", "classes"}));
  census->add_option("--samples", cen_samples);
  census->add_option("--seed", cen_seed);
  census->add_option("--threads", cen_threads);
  census->add_option("--out", cen_out);

  // formulas
  auto* formulas = app.add_subcommand("formulas", "closed-form counts");
  int f_a = 0, f_b = 0;
  bool f_abelian = false;
  formulas->add_option("a", f_a, "n (or p with --abelian)")->required();
  formulas->add_option("b", f_b, "p (or k with --abelian)")->required();
  formulas->add_flag("--abelian", f_abelian, "interpret arguments as p k");

  // witness
  auto* witness = app.add_subcommand("witness", "Sylow intersection witness");
  int w_n = 0, w_p = 0, w_k = 0;
  uint64_t w_seed = kDefaultSeed;
  witness->add_option("n", w_n)->required();
  witness->add_option("p", w_p)->required();
  witness->add_option("k", w_k)->required();
  witness->add_option("--seed", w_seed);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimators");
  estimate->require_subcommand(1);
  auto* est_f = estimate->add_subcommand("f", "P(|P ∩ P^x| > 1)");
  int ef_n = 0, ef_p = 0;
  uint64_t ef_samples = 10000, ef_seed = kDefaultSeed;
  int ef_threads = default_threads();
  est_f->add_option("n", ef_n)->required();
  est_f->add_option("p", ef_p)->required();
  est_f->add_option("--samples", ef_samples);
  est_f->add_option("--seed", ef_seed);
  est_f->add_option("--threads", ef_threads);
  auto* est_m = estimate->add_subcommand("matching", "matching statistic W");
  int em_n = 0;
  uint64_t em_samples = 10000, em_seed = kDefaultSeed;
  int em_threads = default_threads();
  est_m->add_option("n", em_n)->required();
  est_m->add_option("--samples", em_samples);
  est_m->add_option("--seed", em_seed);
  est_m->add_option("--threads", em_threads);

  // burnside
  auto* burnside = app.add_subcommand("burnside", "orbit-sampling chain");
  int b_n = 0, b_p = 0;
  uint64_t b_steps = 10000, b_seed = kDefaultSeed;
  burnside->add_option("n", b_n)->required();
  burnside->add_option("p", b_p)->required();
  burnside->add_option("--steps", b_steps);
  burnside->add_option("--seed", b_seed);

  // verify
  auto* verify = app.add_subcommand("verify", "run the cross-check suite");
  bool v_quick = false, v_full = false, v_timings = false;
  uint64_t v_seed = kDefaultSeed;
  int v_threads = default_threads();
  verify->add_flag("--quick", v_quick, "fast subset (about a minute)");
  verify->add_flag("--full", v_full, "includes the n = 13, 14 censuses");
  verify->add_flag("--timings", v_timings, "include per-check seconds");
  verify->add_option("--seed", v_seed);
  verify->add_option("--threads", v_threads);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*info) {
      PAdicProfile pr = profile(info_n, info_p);
      json j;
      j["n"] = pr.n;
      j["p"] = pr.p;
      j["digits"] = pr.digits;
      j["m"] = pr.m;
      j["order"] = big_pow(pr.p, pr.m).str();
      j["normalizer_index"] = normalizer_index(pr).str();
      out << j.dump() << "\n";
      return 0;
    }

    if (*census) {
      if (cen_method == "exhaustive") {
        CensusTable c = census_exhaustive(cen_n, cen_p);
        std::string text;
        if (cen_out.size() > 4 &&
            cen_out.substr(cen_out.size() - 4) == ".csv")
          text = census_csv(c);
        else
          text = census_json(c).dump() + "\n";
        emit(text, cen_out, out, err);
      } else if (cen_method == "classes") {
        CensusTable c;
        c.n = cen_n;
        c.p = cen_p;
        c.m = profile(cen_n, cen_p).m;
        c.method = "classes";
        c.total = total_via_classes(cen_n, cen_p);
        json j;
        j["n"] = c.n;
        j["p"] = c.p;
        j["m"] = c.m;
        j["method"] = "classes";
        j["total"] = c.total.str();
        emit(j.dump() + "\n", cen_out, out, err);
      } else {
        SampledCensus s =
            census_sampled(cen_n, cen_p, cen_samples, cen_seed, cen_threads);
        emit(sampled_json(s).dump() + "\n", cen_out, out, err);
      }
      return 0;
    }

    if (*formulas) {
      if (f_abelian) {
        const int p = f_a, k = f_b;
        AbelianCensus a = abelian_census(p, k);
        json j;
        j["p"] = p;
        j["k"] = k;
        j["n"] = a.n;
        if (a.p2_warning)
          j["warning"] = "formula derived for odd p; evaluated anyway";
        json vals = json::array();
        for (int aa = k; aa <= 2 * k; ++aa) {
          json e;
          e["a"] = aa;
          e["count"] = a.values[aa - k].str();
          vals.push_back(e);
        }
        j["values"] = vals;
        if (p >= 3) {
          Thm33Bounds b = check_bounds_thm33(p, k);
          json bj;
          bj["lower"] = BigRat(b.lower).convert_to<double>();
          bj["upper"] = BigRat(b.upper).convert_to<double>();
          bj["n_2k"] = b.n2k.str();
          bj["pass"] = b.pass;
          j["bounds"] = bj;
        }
        out << j.dump() << "\n";
        return 0;
      }
      const int n = f_a, p = f_b;
      PAdicProfile pr = profile(n, p);
      json j;
      j["n"] = n;
      j["p"] = p;
      j["m"] = pr.m;
      j["min_size_count"] = count_min_size(n, p).str();
      j["second_size_count"] = second_size_count(n, p).str();
      try {
        j["total_via_classes"] = total_via_classes(n, p).str();
      } catch (const budget_error& e) {
        j["total_via_classes_skipped"] = e.what();
      }
      if (n % p == 0 && n / p >= 1 && n / p <= p - 1) {
        AbelianCensus a = abelian_census(p, n / p);
        json vals = json::array();
        for (size_t i = 0; i < a.values.size(); ++i) {
          json e;
          e["a"] = a.k + static_cast<int>(i);
          e["count"] = a.values[i].str();
          vals.push_back(e);
        }
        j["abelian_values"] = vals;
      }
      out << j.dump() << "\n";
      return 0;
    }

    if (*witness) {
      CounterRng rng(w_seed, 0);
      try {
        IntersectionWitness w = construct_intersection(w_n, w_p, w_k, rng);
        json j;
        j["n"] = w.n;
        j["p"] = w.p;
        j["k"] = w.k;
        j["x"] = format_cycles(w.x);
        j["images"] = format_images(w.x);
        j["verified"] = true;
        j["verification"] = w.verification.str();
        j["method"] = w.method;
        if (!w.notes.empty()) j["notes"] = w.notes;
        j["seed"] = w_seed;
        out << j.dump() << "\n";
        return 0;
      } catch (const impossible_error& e) {
        json j;
        j["n"] = w_n;
        j["p"] = w_p;
        j["k"] = w_k;
        j["impossible"] = true;
        j["reason"] = e.what();
        out << j.dump() << "\n";
        err << e.what() << "\n";
        return 1;
      }
    }

    if (*estimate) {
      if (*est_f) {
        EstimateReport r = estimate_f(ef_n, ef_p, ef_samples, ef_seed,
                                      ef_threads);
        err << "elapsed " << r.elapsed_sec << " s\n";
        out << estimate_json(r).dump() << "\n";
        return 0;
      }
      auto hist = matching_histogram(em_n, em_samples, em_seed, em_threads);
      uint64_t positive = 0, total = 0;
      double mean = 0.0;
      for (size_t w = 0; w < hist.size(); ++w) {
        total += hist[w];
        if (w > 0) positive += hist[w];
        mean += static_cast<double>(w) * hist[w];
      }
      mean /= std::max<uint64_t>(total, 1);
      json j;
      j["n"] = em_n;
      j["samples"] = em_samples;
      j["seed"] = em_seed;
      j["hits_positive"] = positive;
      j["p_positive"] = static_cast<double>(positive) / em_samples;
      double lo, hi;
      wilson_interval(positive, em_samples, lo, hi);
      j["ci95"] = {lo, hi};
      j["mean_w"] = mean;
      json hj = json::array();
      for (uint64_t h : hist) hj.push_back(h);
      j["histogram"] = hj;
      out << j.dump() << "\n";
      return 0;
    }

    if (*burnside) {
      SylowStructure S = build_sylow(b_n, b_p);
      if (!S.order_fits_u64() || S.order_u64() > (1ull << 14) || b_n > 12)
        throw budget_error(
            "burnside: double-coset labelling needs n <= 12 and |P| <= 2^14");
      StabilizerChain chain = build_chain(S);
      CounterRng rng(b_seed, 0);
      Permutation x = Permutation::identity(b_n);
      std::map<std::string, uint64_t> visits;
      for (uint64_t s = 0; s < b_steps; ++s) {
        x = burnside_step(S, x, rng);
        visits[format_images(double_coset_canonical(S, chain, x))]++;
      }
      json j;
      j["n"] = b_n;
      j["p"] = b_p;
      j["steps"] = b_steps;
      j["seed"] = b_seed;
      j["distinct_cosets"] = visits.size();
      json vj = json::array();
      for (const auto& [key, cnt] : visits) {
        json e;
        e["coset"] = key;
        e["count"] = cnt;
        vj.push_back(e);
      }
      j["visits"] = vj;
      out << j.dump() << "\n";
      return 0;
    }

    if (*verify) {
      const int tier = v_full ? 2 : (v_quick ? 0 : 1);
      return run_verify(tier, v_timings, v_seed, v_threads, out, err);
    }
  } catch (const budget_error& e) {
    err << "budget: " << e.what() << "\n";
    return 3;
  } catch (const impossible_error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace dcos::cli
