#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlag/errors.hpp"
#include "qlag/limits.hpp"
#include "qlag/marked.hpp"

namespace qlag {

/// e_j crosses e_i from the left when j < i and pi(j) > pi(i). Equivalently
/// e_i crosses e_j from the right.
inline bool crosses_from_left(const MarkedPM& m, int j, int i) {
  return j < i && m.target(j) > m.target(i);
}

/// Convertibility of a homogeneous edge e: toggling a convertible edge's mark
/// leaves every other edge's block-weak-excedance status unchanged.
///
/// If e is unmarked, every edge crossing it from the left must have
/// bdiff >= 0 and every edge crossing it from the right bdiff <= -1. If e is
/// marked the inequalities are strict: > 0 and < -1.
inline bool is_convertible(const MarkedPM& m, int i) {
  if (!m.edge_is_homogeneous(i)) {
    throw inhomogeneous_edge("convertibility is defined for homogeneous edges only");
  }
  const std::vector<int> diffs = marked_block_differences(m);
  const bool marked = m.is_marked(i);
  for (int j = 1; j <= m.degree(); ++j) {
    if (j == i) continue;
    if (crosses_from_left(m, j, i)) {
      if (marked ? diffs[j - 1] <= 0 : diffs[j - 1] < 0) return false;
    } else if (crosses_from_left(m, i, j)) {
      if (marked ? diffs[j - 1] >= -1 : diffs[j - 1] > -1) return false;
    }
  }
  return true;
}

enum class PhiCase { case0, case1, case2a, case2b };

inline const char* to_string(PhiCase c) {
  switch (c) {
    case PhiCase::case0: return "0";
    case PhiCase::case1: return "1";
    case PhiCase::case2a: return "2a";
    case PhiCase::case2b: return "2b";
  }
  return "?";
}

/// Record of one application of the involution. Exactly one edge is toggled
/// outside case 0; in case 2 the anchor edge e_i is recorded, and in subcase
/// 2-(b) additionally the fallback edge e_i' with i' < i.
struct PhiTrace {
  PhiCase case_tag = PhiCase::case0;
  std::optional<int> toggled_edge;
  std::optional<int> chosen_i;
  std::optional<int> chosen_i_prime;

  nlohmann::json to_json() const {
    nlohmann::json j{{"case", to_string(case_tag)}};
    if (toggled_edge) j["toggled_edge"] = *toggled_edge;
    if (chosen_i) j["i"] = *chosen_i;
    if (chosen_i_prime) j["i_prime"] = *chosen_i_prime;
    return j;
  }
};

/// The sign-reversing involution. Block differences are recomputed from the
/// marked-edge block structure on every call; the incremental update rules
/// exist only as a cross-check (bdiff_update_check).
///
/// Case 0: no homogeneous edges; identity.
/// Case 1: all homogeneous block differences nonnegative; toggle the
///         homogeneous edge whose lower endpoint is leftmost.
/// Case 2: let i be minimal with e_i homogeneous and bdiff < 0. Toggle e_i if
///         it is convertible (2-a); otherwise toggle e_i' where i' is the
///         largest j < i with e_j homogeneous, bdiff 0 and e_j crossing e_i
///         (2-b). An empty 2-b candidate set is a hard internal error.
inline std::pair<MarkedPM, PhiTrace> phi(const MarkedPM& m) {
  const std::vector<int> homogeneous = m.homogeneous_uppers();
  if (homogeneous.empty()) {
    return {m, PhiTrace{}};
  }
  const std::vector<int> diffs = marked_block_differences(m);

  int min_negative = 0;
  for (int i : homogeneous) {
    if (diffs[i - 1] < 0) {
      min_negative = i;
      break;
    }
  }

  if (min_negative == 0) {
    int chosen = homogeneous.front();
    for (int i : homogeneous) {
      if (m.target(i) < m.target(chosen)) chosen = i;
    }
    PhiTrace trace{PhiCase::case1, chosen, std::nullopt, std::nullopt};
    return {m.toggled(chosen), trace};
  }

  const int i = min_negative;
  if (is_convertible(m, i)) {
    PhiTrace trace{PhiCase::case2a, i, i, std::nullopt};
    return {m.toggled(i), trace};
  }
  int i_prime = 0;
  for (int j : homogeneous) {
    if (j >= i) break;
    if (diffs[j - 1] == 0 && crosses_from_left(m, j, i)) i_prime = std::max(i_prime, j);
  }
  if (i_prime == 0) {
    throw internal_inconsistency("empty fallback candidate set for " + m.to_json().dump());
  }
  PhiTrace trace{PhiCase::case2b, i_prime, i, i_prime};
  return {m.toggled(i_prime), trace};
}

/// Verifies the incremental block-difference update against a full
/// recomputation after toggling the homogeneous edge e_i: edges crossing e_i
/// from the left move by +1 on marking and -1 on unmarking, edges crossed
/// from the right move the opposite way, everything else stays put.
inline bool bdiff_update_check(const MarkedPM& m, int i) {
  if (!m.edge_is_homogeneous(i)) {
    throw inhomogeneous_edge("bdiff_update_check is defined for homogeneous edges only");
  }
  const std::vector<int> before = marked_block_differences(m);
  const std::vector<int> after = marked_block_differences(m.toggled(i));
  const int marking = m.is_marked(i) ? -1 : 1;  // +1 when e_i becomes marked
  for (int j = 1; j <= m.degree(); ++j) {
    int expected = before[j - 1];
    if (crosses_from_left(m, j, i)) {
      expected += marking;
    } else if (crosses_from_left(m, i, j)) {
      expected -= marking;
    }
    if (after[j - 1] != expected) return false;
  }
  return true;
}

struct LemmaFailure {
  std::string check;
  nlohmann::json structure;
  std::string detail;
};

/// Outcome of the exhaustive sweep over all marked perfect matchings of one
/// composition.
struct LemmaReport {
  std::vector<int> composition;
  long long structures_checked = 0;
  long long orbits = 0;        // two-element orbits of the involution
  long long fixed_points = 0;
  std::vector<LemmaFailure> failures;

  bool passed() const { return failures.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json fail = nlohmann::json::array();
    for (const auto& f : failures) {
      fail.push_back({{"check", f.check}, {"structure", f.structure}, {"detail", f.detail}});
    }
    return {{"composition", composition},
            {"structures_checked", structures_checked},
            {"orbits", orbits},
            {"fixed_points", fixed_points},
            {"failures", fail}};
  }
};

/// Exhaustively checks, for every marked perfect matching of the composition:
///  - the crossing inequality bdiff(e_i) >= bdiff(e_j) whenever e_i crosses
///    e_j from the left, strict when either edge is marked;
///  - when the minimal negative-bdiff homogeneous edge is not convertible, it
///    is marked and the fallback candidate set is nonempty;
///  - the toggled edge is convertible, in the structure and in its image;
///  - applying the map twice is the identity;
///  - bwex and wt + cross are preserved;
///  - the parity of e flips on every non-fixed point;
///  - the fixed points are exactly the structures without homogeneous edges;
///  - the signed terms over each two-element orbit cancel, so the total
///    signed sum equals the fixed-point sum.
inline LemmaReport verify_lemmas(const Composition& c, int limit = limits::kMarkedDegree,
                                 std::size_t max_failures = 3) {
  LemmaReport report;
  report.composition = c.parts();
  Poly3 total_sum;
  Poly3 fixed_sum;

  auto record = [&](const std::string& check, const MarkedPM& m, const std::string& detail) {
    if (report.failures.size() < max_failures) {
      report.failures.push_back({check, m.to_json(), detail});
    }
  };

  for_each_marked(
      c,
      [&](const MarkedPM& m) {
        ++report.structures_checked;
        const std::vector<int> diffs = marked_block_differences(m);
        const MarkedStats s = stats_from_blocks(m);
        const int n = m.degree();

        // Crossing inequality on every crossing pair.
        for (int i = 1; i <= n && report.failures.size() < max_failures; ++i) {
          for (int j = i + 1; j <= n; ++j) {
            if (m.target(i) <= m.target(j)) continue;  // e_i crosses e_j from the left
            const bool strict = m.is_marked(i) || m.is_marked(j);
            const bool ok = strict ? diffs[i - 1] > diffs[j - 1] : diffs[i - 1] >= diffs[j - 1];
            if (!ok) {
              record("crossing-inequality", m,
                     "edges " + std::to_string(i) + "," + std::to_string(j));
            }
          }
        }

        // Non-convertible minimal edge must be marked with a nonempty
        // fallback set.
        const std::vector<int> homogeneous = m.homogeneous_uppers();
        int min_negative = 0;
        for (int i : homogeneous) {
          if (diffs[i - 1] < 0) {
            min_negative = i;
            break;
          }
        }
        if (min_negative != 0 && !is_convertible(m, min_negative)) {
          if (!m.is_marked(min_negative)) {
            record("nonconvertible-edge-marked", m, "edge " + std::to_string(min_negative));
          }
          bool found = false;
          for (int j : homogeneous) {
            if (j >= min_negative) break;
            if (diffs[j - 1] == 0 && crosses_from_left(m, j, min_negative)) found = true;
          }
          if (!found) {
            record("fallback-set-nonempty", m, "edge " + std::to_string(min_negative));
          }
        }

        const auto [image, trace] = phi(m);
        const MarkedStats image_stats = stats_from_blocks(image);

        if (trace.case_tag == PhiCase::case0) {
          ++report.fixed_points;
          if (!homogeneous.empty()) {
            record("fixed-point-characterization", m, "fixed with homogeneous edges");
          }
          if (!(image == m)) record("involution", m, "case 0 must be the identity");
          fixed_sum.add_term({0, s.block_weak_excedances, s.weight + s.crossings},
                             s.unmarked_edges % 2 == 0 ? 1 : -1);
        } else {
          if (homogeneous.empty()) {
            record("fixed-point-characterization", m, "moved without homogeneous edges");
          }
          if (image == m) {
            record("sign-reversal", m, "non-identity case returned the input");
          }
          if (!is_convertible(m, *trace.toggled_edge)) {
            record("toggled-edge-convertible", m,
                   "edge " + std::to_string(*trace.toggled_edge));
          }
          if (!is_convertible(image, *trace.toggled_edge)) {
            record("toggled-edge-convertible", m,
                   "edge " + std::to_string(*trace.toggled_edge) + " in the image");
          }
          if (!(phi(image).first == m)) {
            record("involution", m, "applying the map twice changed the structure");
          }
          const int de = image_stats.unmarked_edges - s.unmarked_edges;
          if (de != 1 && de != -1) {
            record("sign-reversal", m, "e changed by " + std::to_string(de));
          }
          if (image_stats.block_weak_excedances != s.block_weak_excedances) {
            record("bwex-preserved", m,
                   std::to_string(s.block_weak_excedances) + " -> " +
                       std::to_string(image_stats.block_weak_excedances));
          }
          if (image_stats.weight + image_stats.crossings != s.weight + s.crossings) {
            record("wt-plus-cross-preserved", m,
                   std::to_string(s.weight + s.crossings) + " -> " +
                       std::to_string(image_stats.weight + image_stats.crossings));
          }
        }
        total_sum.add_term({0, s.block_weak_excedances, s.weight + s.crossings},
                           s.unmarked_edges % 2 == 0 ? 1 : -1);
      },
      limit);

  report.orbits = (report.structures_checked - report.fixed_points) / 2;
  if (!(total_sum == fixed_sum)) {
    report.failures.push_back(
        {"orbit-cancellation", nlohmann::json{{"composition", c.parts()}},
         "total " + total_sum.to_string() + " != fixed-point sum " + fixed_sum.to_string()});
  }
  return report;
}

}  // namespace qlag
