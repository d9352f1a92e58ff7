#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlag/involution.hpp"
#include "qlag/laguerre.hpp"
#include "qlag/marked.hpp"
#include "qlag/matchings.hpp"

namespace qlag {

// Largest ranges that finish comfortably under a minute single-threaded.
inline constexpr int kDefaultVerifyMaxN = 7;
inline constexpr int kDefaultInvolutionMaxN = 6;

struct VerifyReport {
  std::string suite;
  int max_n = 0;
  bool passed = true;
  long long checked = 0;
  double wall_ms = 0.0;
  std::vector<std::string> lines;
  nlohmann::json details = nlohmann::json::array();
  std::optional<nlohmann::json> counterexample;

  nlohmann::json to_json() const {
    nlohmann::json j{{"suite", suite},     {"max_n", max_n},   {"passed", passed},
                     {"checked", checked}, {"wall_ms", wall_ms}, {"details", details}};
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
  }
};

/// All 2^(N-1) compositions of N, parts in the order produced by splitting at
/// each subset of the N-1 gaps, smallest gap varying fastest.
inline std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  if (n <= 0) return out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int gap = 0; gap < n - 1; ++gap) {
      if (mask & (1u << gap)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.emplace_back(std::move(parts));
  }
  return out;
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// For every perfect matching of degree <= max_n: ov = wt - cross, the
/// overlap count equals the permutation crossing count, and both weak
/// excedance readings agree.
inline VerifyReport verify_lemma_ov(int max_n = kDefaultVerifyMaxN) {
  detail::Stopwatch timer;
  VerifyReport report;
  report.suite = "lemma-ov";
  report.max_n = max_n;
  for (int n = 0; n <= max_n && report.passed; ++n) {
    long long count = 0;
    for_each_perfect_matching(
        n,
        [&](const PermutationPM& p) {
          if (!report.passed) return;
          ++count;
          const int ov = overlapping_pairs(p);
          const int wt = permutation_weight(p);
          const int cross = crossings(p.as_matching());
          const int cr = permutation_crossings(p);
          if (ov != wt - cross || ov != cr) {
            report.passed = false;
            report.counterexample = {{"perm", p.one_line()}, {"ov", ov},   {"wt", wt},
                                     {"cross", cross},       {"cr", cr}};
          }
        },
        max_n);
    report.checked += count;
    report.lines.push_back("n=" + std::to_string(n) + ": " + std::to_string(count) +
                           " perfect matchings");
    report.details.push_back({{"n", n}, {"perfect_matchings", count}});
  }
  report.wall_ms = timer.ms();
  return report;
}

/// Recurrence route equals the matching-sum route for every degree <= max_n.
inline VerifyReport verify_laguerre_eq(int max_n = kDefaultVerifyMaxN) {
  detail::Stopwatch timer;
  VerifyReport report;
  report.suite = "laguerre-eq";
  report.max_n = max_n;
  for (int n = 0; n <= max_n && report.passed; ++n) {
    const Poly3 rec = laguerre_recurrence(n, std::max(max_n, limits::kLaguerreRecurrence));
    const Poly3 comb = laguerre_combinatorial(n, max_n);
    ++report.checked;
    if (rec == comb) {
      report.lines.push_back("n=" + std::to_string(n) + ": " +
                             std::to_string(rec.terms().size()) + " terms agree");
      report.details.push_back({{"n", n}, {"terms", rec.terms().size()}});
    } else {
      report.passed = false;
      report.counterexample = {{"n", n},
                               {"recurrence", rec.to_json()},
                               {"combinatorial", comb.to_json()}};
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

/// Permutation, matching and lattice-path routes agree on every moment.
inline VerifyReport verify_moments_eq(int max_n = kDefaultVerifyMaxN) {
  detail::Stopwatch timer;
  VerifyReport report;
  report.suite = "moments-eq";
  report.max_n = max_n;
  const MomentTable table = MomentTable::build(max_n, max_n);
  for (int n = 0; n <= max_n && report.passed; ++n) {
    const Poly3 perm = moment_permutation(n, max_n);
    const Poly3 match = moment_matching(n, max_n);
    const Poly3 motzkin = moment_motzkin(n, max_n);
    ++report.checked;
    if (perm == match && match == motzkin && motzkin == table.moment(n)) {
      report.lines.push_back("n=" + std::to_string(n) + ": " +
                             std::to_string(perm.terms().size()) + " terms agree");
      report.details.push_back({{"n", n}, {"terms", perm.terms().size()}});
    } else {
      report.passed = false;
      report.counterexample = {{"n", n},
                               {"permutation", perm.to_json()},
                               {"matching", match.to_json()},
                               {"motzkin", motzkin.to_json()}};
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

/// Runs the exhaustive involution checks over every composition of every
/// N <= max_n and additionally requires the fixed-point count to equal the
/// derangement count.
inline VerifyReport verify_involution(int max_n = kDefaultInvolutionMaxN) {
  detail::Stopwatch timer;
  VerifyReport report;
  report.suite = "involution";
  report.max_n = max_n;
  for (int n = 1; n <= max_n && report.passed; ++n) {
    for (const Composition& c : compositions_of(n)) {
      LemmaReport lemmas = verify_lemmas(c, max_n);
      long long derangements = 0;
      for_each_derangement(c, [&](const PermutationPM&) { ++derangements; }, max_n);
      if (lemmas.fixed_points != derangements) {
        lemmas.failures.push_back({"fixed-points-equal-derangements",
                                   nlohmann::json{{"composition", c.parts()}},
                                   std::to_string(lemmas.fixed_points) + " fixed vs " +
                                       std::to_string(derangements) + " derangements"});
      }
      report.checked += lemmas.structures_checked;
      report.details.push_back(lemmas.to_json());
      report.lines.push_back("(" + c.to_string() + "): " +
                             std::to_string(lemmas.structures_checked) + " structures, " +
                             std::to_string(lemmas.orbits) + " orbits, " +
                             std::to_string(lemmas.fixed_points) + " fixed points");
      if (!lemmas.passed()) {
        report.passed = false;
        report.counterexample = lemmas.to_json();
        break;
      }
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

/// Functional, signed-sum and derangement routes agree on the linearization
/// coefficient of every composition of every N <= max_n.
inline VerifyReport verify_linearization(int max_n = kDefaultVerifyMaxN) {
  detail::Stopwatch timer;
  VerifyReport report;
  report.suite = "linearization";
  report.max_n = max_n;
  for (int n = 1; n <= max_n && report.passed; ++n) {
    for (const Composition& c : compositions_of(n)) {
      const Poly3 functional = linearize_functional(c.parts(), max_n);
      const Poly3 signed_route = signed_sum(c, max_n);
      const Poly3 derangement_route = derangement_gf(c, max_n);
      ++report.checked;
      if (functional == signed_route && signed_route == derangement_route) {
        report.lines.push_back("(" + c.to_string() + "): " + functional.to_string());
        report.details.push_back(
            {{"composition", c.parts()}, {"value", functional.to_string()}});
      } else {
        report.passed = false;
        report.counterexample = {{"composition", c.parts()},
                                 {"functional", functional.to_json()},
                                 {"signed_sum", signed_route.to_json()},
                                 {"derangement", derangement_route.to_json()}};
        break;
      }
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

}  // namespace qlag
