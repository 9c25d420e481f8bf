// Acceptance suite: one line per criterion, nonzero exit on any failure.
// "--full" additionally reproduces the n = 14 census row.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "dcos/census.hpp"
#include "dcos/chain.hpp"
#include "dcos/cli.hpp"
#include "dcos/closedform.hpp"
#include "dcos/errors.hpp"
#include "dcos/intersect.hpp"
#include "dcos/prob.hpp"
#include "dcos/rng.hpp"
#include "dcos/sylow.hpp"
#include "dcos/table1.hpp"
#include "dcos/witness.hpp"

using namespace dcos;

namespace {

constexpr uint64_t kSeed = 20240817;

std::map<std::pair<int, int>, CensusTable> census_cache;

const CensusTable& census(int n, int p) {
  auto key = std::make_pair(n, p);
  auto it = census_cache.find(key);
  if (it == census_cache.end())
    it = census_cache.emplace(key, census_exhaustive(n, p)).first;
  return it->second;
}

bool check_counts_against_reference(int n, std::ostream& log) {
  const CensusTable& c = census(n, 2);
  const auto& ref = p2_reference_counts()[n];
  for (size_t k = 0; k < c.counts.size(); ++k) {
    const long expect = k < ref.size() ? ref[k] : 0;
    if (c.counts[k] != expect) {
      log << "row " << n << " k=" << k << ": got " << c.counts[k].str()
          << ", reference " << expect;
      return false;
    }
  }
  if (c.total != p2_reference_total(n)) {
    log << "row " << n << " total mismatch";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--full") == 0) full = true;

  struct Criterion {
    std::string name;
    std::function<bool(std::ostream&)> run;
  };
  std::vector<Criterion> criteria;

  // 1: exhaustive census equals every reference entry, rows 1..13
  criteria.push_back({"table reproduction, p=2 rows 1..13 (exact)",
                      [&](std::ostream& log) {
    for (int n = 1; n <= 13; ++n)
      if (!check_counts_against_reference(n, log)) return false;
    if (full && !check_counts_against_reference(14, log)) return false;
    return true;
  }});

  // 2: class-formula totals for rows 1..18
  criteria.push_back({"class-formula totals, p=2 rows 1..18 (exact)",
                      [](std::ostream& log) {
    for (int n = 1; n <= 18; ++n) {
      const BigInt t = total_via_classes(n, 2);
      if (t != p2_reference_total(n)) {
        log << "n=" << n << ": got " << t.str() << ", reference "
            << p2_reference_total(n);
        return false;
      }
    }
    return true;
  }});

  // 3: (11,11) by three independent routes
  criteria.push_back({"n=p=11 example by three routes (exact)",
                      [](std::ostream& log) {
    AbelianCensus a = abelian_census(11, 1);
    const CensusTable& c = census(11, 11);
    const BigInt n1 = 10;
    const BigInt n2 = 329890;
    const BigInt closed1 = 11 - 1;
    const BigInt closed2 =
        exact_div(big_factorial(10) - 10, 11, "acceptance");
    const bool ok = a.values[0] == n1 && a.values[1] == n2 &&
                    c.counts[0] == n1 && c.counts[1] == n2 &&
                    closed1 == n1 && closed2 == n2;
    if (!ok)
      log << "formula (" << a.values[0].str() << "," << a.values[1].str()
          << ") census (" << c.counts[0].str() << "," << c.counts[1].str()
          << ") closed (" << closed1.str() << "," << closed2.str() << ")";
    return ok;
  }});

  // 4: second-smallest size count against censuses and the reference column
  criteria.push_back({"second-size formula vs censuses and reference (exact)",
                      [](std::ostream& log) {
    for (int n = 3; n <= 13; ++n) {
      const CensusTable& c = census(n, 2);
      if (c.m >= 1 && second_size_count(n, 2) != c.counts[1]) {
        log << "(n,p)=(" << n << ",2)";
        return false;
      }
    }
    for (int n = 3; n <= 12; ++n) {
      if (profile(n, 3).m < 1) continue;
      if (second_size_count(n, 3) != census(n, 3).counts[1]) {
        log << "(n,p)=(" << n << ",3)";
        return false;
      }
    }
    for (int p : {5, 7, 11})
      for (int n = p; n <= 11; ++n) {
        if (profile(n, p).m < 1) continue;
        if (second_size_count(n, p) != census(n, p).counts[1]) {
          log << "(n,p)=(" << n << "," << p << ")";
          return false;
        }
      }
    for (int n = 1; n <= 18; ++n) {
      const auto& ref = p2_reference_counts()[n];
      const long expect = ref.size() > 1 ? ref[1] : 0;
      if (second_size_count(n, 2) != expect) {
        log << "reference column mismatch at n=" << n;
        return false;
      }
    }
    return true;
  }});

  // 5: minimal-size counts
  criteria.push_back({"minimal-size count equals the normalizer index (exact)",
                      [](std::ostream& log) {
    for (int n = 1; n <= 13; ++n)
      if (census(n, 2).counts[0] != 1) {
        log << "p=2 first column not 1 at n=" << n;
        return false;
      }
    for (int n = 3; n <= 12; ++n)
      if (census(n, 3).counts[0] != normalizer_index(profile(n, 3))) {
        log << "(n,p)=(" << n << ",3)";
        return false;
      }
    for (int p : {5, 7, 11})
      for (int n = p; n <= 11; ++n)
        if (census(n, p).counts[0] != normalizer_index(profile(n, p))) {
          log << "(n,p)=(" << n << "," << p << ")";
          return false;
        }
    return true;
  }});

  // 6: Sylow-counting identity
  criteria.push_back({"Sylow-counting identity on six pairs (exact)",
                      [](std::ostream& log) {
    for (auto [n, p] : {std::pair{4, 2}, {5, 2}, {6, 2}, {6, 3}, {8, 2},
                        {9, 3}}) {
      LemmaDReport r = verify_lemma_d(n, p);
      if (!r.pass) {
        log << "(n,p)=(" << n << "," << p << "): ";
        for (const auto& f : r.failures) log << f << "; ";
        return false;
      }
      if (n == 8 && p == 2 && r.d.back() != 0) {
        log << "(8,2) should have no trivial-intersection conjugate";
        return false;
      }
    }
    return true;
  }});

  // 7: elementary abelian closed form vs brute force and the census engine
  criteria.push_back({"abelian counts vs enumeration and census (exact)",
                      [](std::ostream& log) {
    AbelianCensus a32 = abelian_census(3, 2);
    if (a32.values != std::vector<BigInt>{8, 0, 8}) {
      log << "(3,2) values";
      return false;
    }
    {
      // direct scan of S_6 against the formula
      SylowStructure S = build_sylow(6, 3);
      std::vector<Permutation> elems;
      for (uint64_t i = 0; i < 9; ++i) elems.push_back(element_by_index(S, i));
      std::vector<long> bucket(3, 0);  // log_3 |P ∩ P^x| in {0,1,2}
      std::vector<uint16_t> v = {0, 1, 2, 3, 4, 5};
      do {
        Permutation x{std::vector<uint16_t>(v.begin(), v.end())};
        Permutation xinv = inverse(x);
        int inter = 0;
        for (const auto& h : elems)
          if (contains(S, conjugate(h, xinv))) ++inter;
        int logi = 0;
        while (inter > 1) {
          inter /= 3;
          ++logi;
        }
        ++bucket[logi];
      } while (std::next_permutation(v.begin(), v.end()));
      for (int a = 2; a <= 4; ++a) {
        const BigInt na = BigInt(bucket[4 - a]) / big_pow(3, a);
        if (na != a32.values[a - 2]) {
          log << "S_6 scan disagrees at a=" << a;
          return false;
        }
      }
    }
    {
      AbelianCensus a52 = abelian_census(5, 2);
      const CensusTable& c = census(10, 5);
      for (int k = 0; k <= 2; ++k)
        if (c.counts[k] != a52.values[k]) {
          log << "(5,2) vs census(10,5) at k=" << k;
          return false;
        }
    }
    for (int p : {3, 5, 7, 11, 13}) {
      for (int k = 1; k <= p - 1; ++k) {
        AbelianCensus a = abelian_census(p, k);
        BigInt mass = 0;
        for (int aa = k; aa <= 2 * k; ++aa)
          mass += big_pow(p, aa) * a.values[aa - k];
        if (mass != big_factorial(static_cast<long>(k) * p)) {
          log << "mass identity fails at (" << p << "," << k << ")";
          return false;
        }
        if (a.values[0] != big_factorial(k) * big_pow(p - 1, k)) {
          log << "n_k fails at (" << p << "," << k << ")";
          return false;
        }
        if (!check_bounds_thm33(p, k).pass) {
          log << "bounds fail at (" << p << "," << k << ")";
          return false;
        }
      }
    }
    return true;
  }});

  // 8: witnesses for all non-exception triples, refutations for exceptions
  criteria.push_back({"intersection witnesses and exception refutations",
                      [](std::ostream& log) {
    CounterRng rng(kSeed, 8);
    int built = 0;
    for (int p : {2, 3, 5, 7, 11, 13}) {
      for (int n = 1; n <= 14; ++n) {
        const int m = profile(n, p).m;
        for (int k = 0; k <= m; ++k) {
          if (is_exception(n, p, k)) continue;
          try {
            IntersectionWitness w = construct_intersection(n, p, k, rng);
            if (w.verification != big_pow(p, k)) {
              log << "witness (" << n << "," << p << "," << k
                  << ") verified wrong order";
              return false;
            }
            ++built;
          } catch (const std::exception& e) {
            log << "witness (" << n << "," << p << "," << k
                << ") failed: " << e.what();
            return false;
          }
        }
      }
    }
    for (const auto& e : exceptions()) {
      try {
        construct_intersection(e[0], e[1], e[2], rng);
        log << "exception triple not refused";
        return false;
      } catch (const impossible_error&) {
      }
      if (!exception_refuted_exhaustively(e[0], e[1], e[2])) {
        log << "exhaustive scan found a witness for (" << e[0] << "," << e[1]
            << "," << e[2] << ")";
        return false;
      }
    }
    log << built << " witnesses verified, 6 exceptions refuted";
    return true;
  }});

  // 9: p = 2 lower bound at n = 50, 100, 200
  criteria.push_back({"p=2 estimate bounded below by 0.37 (statistical)",
                      [](std::ostream& log) {
    for (int n : {50, 100, 200}) {
      EstimateReport r = estimate_f(n, 2, 10000, kSeed, 2);
      log << "f(" << n << ",2)~" << r.p_hat << " ";
      if (r.p_hat < 0.37) return false;
    }
    return true;
  }});

  // 10: decreasing trend for p = 3 and p = 5
  criteria.push_back({"f decreasing along n for p=3 and p=5 (statistical)",
                      [](std::ostream& log) {
    bool ok = true;
    const std::vector<std::pair<int, std::array<int, 3>>> chains = {
        {3, {30, 90, 270}}, {5, {25, 125, 375}}};
    const uint64_t samples = 100000;
    for (const auto& [p, ns] : chains) {
      std::array<EstimateReport, 3> rs;
      for (int i = 0; i < 3; ++i)
        rs[i] = estimate_f(ns[i], p, samples, kSeed, 2);
      for (int i = 0; i < 3; ++i)
        log << "f(" << ns[i] << "," << p << ")~" << rs[i].p_hat << " ";
      for (int i = 0; i + 1 < 3; ++i) {
        const double se_i =
            std::sqrt(std::max(rs[i].p_hat * (1 - rs[i].p_hat), 0.0) /
                      samples);
        const double se_j =
            std::sqrt(std::max(rs[i + 1].p_hat * (1 - rs[i + 1].p_hat), 0.0) /
                      samples);
        if (!(rs[i].p_hat > rs[i + 1].p_hat &&
              rs[i].p_hat - rs[i + 1].p_hat > 3 * (se_i + se_j))) {
          log << "| no 3-sigma separation between n=" << ns[i] << " and n="
              << ns[i + 1] << " at p=" << p << " ";
          ok = false;
        }
      }
    }
    return ok;
  }});

  // 11: Poisson limit of the matching statistic
  criteria.push_back({"matching statistic Poisson(1/2) limit (statistical)",
                      [](std::ostream& log) {
    auto hist = matching_histogram(200, 100000, kSeed, 2);
    double tv = 0.0, tail = 1.0;
    uint64_t pos = 0;
    for (size_t w = 0; w < hist.size(); ++w) {
      const double pw = poisson_pmf(0.5, static_cast<int>(w));
      tail -= pw;
      tv += std::abs(static_cast<double>(hist[w]) / 100000.0 - pw);
      if (w > 0) pos += hist[w];
    }
    tv = (tv + std::abs(tail)) / 2.0;
    const double ppos = static_cast<double>(pos) / 100000.0;
    log << "TV=" << tv << " P(W>0)=" << ppos << " ";
    if (tv >= 0.05) {
      log << "| TV too large";
      return false;
    }
    if (std::abs(ppos - (1.0 - std::exp(-0.5))) >= 0.02) {
      log << "| P(W>0) off the limit";
      return false;
    }
    // exact small-n oracle: full enumeration of S_4 (the two blocks are
    // preserved together or not at all, so exactly 8 of 24 are positive)
    int count = 0;
    std::vector<uint16_t> v = {0, 1, 2, 3};
    do {
      if (matching_count(Permutation{
              std::vector<uint16_t>(v.begin(), v.end())}) > 0)
        ++count;
    } while (std::next_permutation(v.begin(), v.end()));
    EstimateReport r4 = estimate_w_positive(4, 200000, kSeed, 2);
    if (count != 8 || std::abs(r4.p_hat - count / 24.0) > 0.01) {
      log << "| n=4 oracle: enumerated " << count << "/24, estimator "
          << r4.p_hat;
      return false;
    }
    return true;
  }});

  // 12: Burnside process uniformity
  criteria.push_back({"orbit sampler uniform over double cosets (statistical)",
                      [](std::ostream& log) {
    for (auto [n, p] : {std::pair{5, 2}, {6, 3}, {7, 2}}) {
      SylowStructure S = build_sylow(n, p);
      StabilizerChain chain = build_chain(S);
      const long classes = census(n, p).total.convert_to<long>();
      CounterRng rng(kSeed, 1200 + n);
      Permutation x = Permutation::identity(n);
      std::map<std::string, uint64_t> visits;
      const uint64_t steps = 100000;
      for (uint64_t s = 0; s < steps; ++s) {
        x = burnside_step(S, x, rng);
        visits[format_images(double_coset_canonical(S, chain, x))]++;
      }
      if (static_cast<long>(visits.size()) != classes) {
        log << "(" << n << "," << p << "): visited " << visits.size()
            << " of " << classes << " cosets";
        return false;
      }
      double chi2 = 0.0;
      const double expect = static_cast<double>(steps) / classes;
      for (const auto& [key, cnt] : visits)
        chi2 += (cnt - expect) * (cnt - expect) / expect;
      const double cutoff =
          chi_square_quantile_99(static_cast<int>(classes) - 1);
      log << "(" << n << "," << p << ") chi2=" << chi2 << "<" << cutoff
          << " ";
      if (chi2 >= cutoff) {
        log << "| uniformity rejected";
        return false;
      }
    }
    return true;
  }});

  // 13: byte-identical output across thread counts and reruns
  criteria.push_back({"deterministic byte-identical output (exact)",
                      [](std::ostream& log) {
    const std::vector<std::vector<std::string>> cmds = {
        {"info", "12", "2"},
        {"census", "7", "2"},
        {"census", "12", "3", "--method", "classes"},
        {"census", "9", "2", "--method", "sampled", "--samples", "20000",
         "--seed", "77"},
        {"formulas", "12", "3"},
        {"formulas", "--abelian", "7", "3"},
        {"witness", "12", "2", "4", "--seed", "5"},
        {"estimate", "f", "30", "3", "--samples", "20000", "--seed", "77"},
        {"estimate", "matching", "20", "--samples", "20000", "--seed", "77"},
        {"burnside", "6", "3", "--steps", "20000", "--seed", "77"},
        {"verify", "--quick"},
    };
    for (const auto& cmd : cmds) {
      std::vector<std::string> outs;
      for (const std::string threads : {"1", "2", "8", "2"}) {
        std::vector<std::string> c = cmd;
        if (cmd[0] == "census" || cmd[0] == "estimate" ||
            cmd[0] == "verify") {
          c.push_back("--threads");
          c.push_back(threads);
        }
        std::ostringstream out, err;
        dcos::cli::run(c, out, err);
        outs.push_back(out.str());
      }
      for (size_t i = 1; i < outs.size(); ++i)
        if (outs[i] != outs[0]) {
          log << "command '" << cmd[0] << "' differs between invocations";
          return false;
        }
    }
    return true;
  }});

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream log;
    bool ok = false;
    try {
      ok = criteria[i].run(log);
    } catch (const std::exception& e) {
      log << "exception: " << e.what();
      ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << (i + 1)
              << ": " << criteria[i].name;
    if (!log.str().empty()) std::cout << " -- " << log.str();
    std::cout << " (" << secs << " s)" << std::endl;
    if (!ok) ++failed;
  }
  if (failed) {
    std::cout << failed << " criteria failed" << std::endl;
    return 1;
  }
  std::cout << "all 13 criteria passed" << std::endl;
  return 0;
}
