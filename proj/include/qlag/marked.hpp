#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlag/errors.hpp"
#include "qlag/limits.hpp"
#include "qlag/matchings.hpp"
#include "qlag/poly3.hpp"

namespace qlag {

/// Composition (n_1, ..., n_k) of positive parts. Part r owns the interval
/// of consecutive integers ending at n_1 + ... + n_r; the intervals
/// partition [N].
class Composition {
 public:
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw invalid_structure("composition must have at least one part");
    ends_.reserve(parts_.size());
    int total = 0;
    for (int p : parts_) {
      if (p < 1) throw invalid_structure("composition parts must be positive");
      total += p;
      ends_.push_back(total);
    }
  }

  /// Parses comma-separated positive integers, e.g. "2,3,2".
  static Composition parse(const std::string& text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string::npos) comma = text.size();
      const std::string piece = text.substr(pos, comma - pos);
      try {
        std::size_t used = 0;
        const int value = std::stoi(piece, &used);
        if (used != piece.size()) throw parse_error("");
        parts.push_back(value);
      } catch (const std::exception&) {
        throw parse_error("composition must be comma-separated positive integers, got '" +
                          text + "'");
      }
      pos = comma + 1;
    }
    try {
      return Composition(std::move(parts));
    } catch (const invalid_structure& ex) {
      throw parse_error(ex.what());
    }
  }

  int part_count() const { return static_cast<int>(parts_.size()); }
  int part(int r) const { return parts_[static_cast<std::size_t>(r) - 1]; }  // 1-based
  const std::vector<int>& parts() const { return parts_; }
  int total() const { return ends_.back(); }

  int interval_first(int r) const { return r == 1 ? 1 : ends_[static_cast<std::size_t>(r) - 2] + 1; }
  int interval_last(int r) const { return ends_[static_cast<std::size_t>(r) - 1]; }

  /// 1-based index of the interval containing vertex v.
  int interval_of(int v) const {
    if (v < 1 || v > total()) {
      throw vertex_out_of_range("vertex " + std::to_string(v) + " outside [1, " +
                                std::to_string(total()) + "]");
    }
    return static_cast<int>(std::lower_bound(ends_.begin(), ends_.end(), v) -
                            ends_.begin()) + 1;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  std::vector<int> ends_;  // prefix sums
};

/// True when both endpoints lie in the same composition interval.
inline bool is_homogeneous(const Composition& c, int i, int j) {
  return c.interval_of(i) == c.interval_of(j);
}

/// Marked perfect matching: a perfect matching of degree N together with a
/// set S of marked edges that contains every inhomogeneous edge. Edges are
/// identified by their upper endpoint.
class MarkedPM {
 public:
  MarkedPM(Composition comp, PermutationPM pm, const std::vector<int>& marked_uppers)
      : comp_(std::move(comp)), pm_(std::move(pm)),
        marked_(static_cast<std::size_t>(pm_.degree()), false) {
    if (pm_.degree() != comp_.total()) {
      throw invalid_structure("matching degree must equal the composition total");
    }
    for (int i : marked_uppers) {
      if (i < 1 || i > pm_.degree()) throw vertex_out_of_range("marked endpoint outside [1, N]");
      if (marked_[i - 1]) throw invalid_structure("duplicate marked endpoint");
      marked_[i - 1] = true;
    }
    for (int i = 1; i <= pm_.degree(); ++i) {
      if (!is_homogeneous(comp_, i, pm_.image(i)) && !marked_[i - 1]) {
        throw invalid_structure("inhomogeneous edge (" + std::to_string(i) + "," +
                                std::to_string(pm_.image(i)) + ") must be marked");
      }
    }
  }

  const Composition& composition() const { return comp_; }
  const PermutationPM& matching() const { return pm_; }
  int degree() const { return pm_.degree(); }
  int target(int i) const { return pm_.image(i); }

  bool is_marked(int i) const {
    if (i < 1 || i > degree()) throw vertex_out_of_range("vertex outside [1, N]");
    return marked_[i - 1];
  }

  bool edge_is_homogeneous(int i) const { return is_homogeneous(comp_, i, pm_.image(i)); }

  std::vector<int> marked_uppers() const {
    std::vector<int> out;
    for (int i = 1; i <= degree(); ++i) {
      if (marked_[i - 1]) out.push_back(i);
    }
    return out;
  }

  /// Upper endpoints of homogeneous edges, ascending.
  std::vector<int> homogeneous_uppers() const {
    std::vector<int> out;
    for (int i = 1; i <= degree(); ++i) {
      if (edge_is_homogeneous(i)) out.push_back(i);
    }
    return out;
  }

  int marked_count() const {
    return static_cast<int>(std::count(marked_.begin(), marked_.end(), true));
  }

  /// Flips the marking status of the edge at upper vertex i. Only homogeneous
  /// edges may be toggled; unmarking an inhomogeneous edge would break the
  /// structure invariant.
  MarkedPM toggled(int i) const {
    if (i < 1 || i > degree()) throw vertex_out_of_range("vertex outside [1, N]");
    if (!edge_is_homogeneous(i)) {
      throw inhomogeneous_edge("edge at upper vertex " + std::to_string(i) +
                               " is inhomogeneous and cannot be toggled");
    }
    MarkedPM copy = *this;
    copy.marked_[i - 1] = !copy.marked_[i - 1];
    return copy;
  }

  friend bool operator==(const MarkedPM&, const MarkedPM&) = default;

  nlohmann::json to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (int i = 1; i <= degree(); ++i) edges.push_back({i, pm_.image(i)});
    return {{"composition", comp_.parts()}, {"edges", edges}, {"marked", marked_uppers()}};
  }

  static MarkedPM from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("composition") || !j.contains("edges") ||
        !j.contains("marked")) {
      throw parse_error("marked matching JSON must have keys composition, edges, marked");
    }
    Composition comp(j.at("composition").get<std::vector<int>>());
    std::vector<int> one_line(static_cast<std::size_t>(comp.total()), 0);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw parse_error("edge must be a pair [i, j]");
      const int i = e[0].get<int>();
      const int t = e[1].get<int>();
      if (i < 1 || i > comp.total()) throw parse_error("edge endpoint outside [1, N]");
      if (one_line[i - 1] != 0) throw parse_error("duplicate upper endpoint");
      one_line[i - 1] = t;
    }
    for (int v : one_line) {
      if (v == 0) throw parse_error("edges must form a perfect matching");
    }
    try {
      return MarkedPM(std::move(comp), PermutationPM(std::move(one_line)),
                      j.at("marked").get<std::vector<int>>());
    } catch (const error& ex) {
      throw parse_error(ex.what());
    }
  }

 private:
  Composition comp_;
  PermutationPM pm_;
  std::vector<bool> marked_;
};

/// Decomposition of a marked perfect matching. The unmarked portion keeps all
/// N vertices and drops the marked edges; the marked portion drops unmarked
/// edges together with their vertices and relabels the survivors
/// order-preservingly in each row.
struct Portions {
  Matching unmarked_portion;
  PermutationPM marked_portion;
};

inline Portions portions(const MarkedPM& m) {
  const int n = m.degree();
  std::vector<std::pair<int, int>> unmarked_edges;
  std::vector<int> marked_uppers;
  std::vector<int> marked_lowers;
  for (int i = 1; i <= n; ++i) {
    if (m.is_marked(i)) {
      marked_uppers.push_back(i);
      marked_lowers.push_back(m.target(i));
    } else {
      unmarked_edges.emplace_back(i, m.target(i));
    }
  }
  std::sort(marked_lowers.begin(), marked_lowers.end());
  std::vector<int> relabeled(marked_uppers.size());
  for (std::size_t idx = 0; idx < marked_uppers.size(); ++idx) {
    const int t = m.target(marked_uppers[idx]);
    const auto rank = std::lower_bound(marked_lowers.begin(), marked_lowers.end(), t) -
                      marked_lowers.begin();
    relabeled[idx] = static_cast<int>(rank) + 1;
  }
  return Portions{Matching::from_edges(n, unmarked_edges), PermutationPM(std::move(relabeled))};
}

/// Block indices when the rows are cut after each vertex incident to a marked
/// edge instead of after unmatched vertices.
inline BlockStructure marked_block_structure(const MarkedPM& m) {
  const int n = m.degree();
  std::vector<bool> lower_marked(static_cast<std::size_t>(n), false);
  for (int i = 1; i <= n; ++i) {
    if (m.is_marked(i)) lower_marked[m.target(i) - 1] = true;
  }
  BlockStructure bs{std::vector<int>(n), std::vector<int>(n)};
  int upper_cuts = 0;
  int lower_cuts = 0;
  for (int i = 1; i <= n; ++i) {
    bs.upper_index[i - 1] = 1 + upper_cuts;
    bs.lower_index[i - 1] = 1 + lower_cuts;
    if (m.is_marked(i)) ++upper_cuts;
    if (lower_marked[i - 1]) ++lower_cuts;
  }
  return bs;
}

/// Block difference of the edge at upper vertex i under the marked-edge cuts.
inline int marked_block_difference(const MarkedPM& m, int i) {
  const BlockStructure bs = marked_block_structure(m);
  return bs.lower_index[m.target(i) - 1] - bs.upper_index[i - 1];
}

/// All block differences under the marked-edge cuts, indexed by upper vertex.
inline std::vector<int> marked_block_differences(const MarkedPM& m) {
  const BlockStructure bs = marked_block_structure(m);
  std::vector<int> diffs(static_cast<std::size_t>(m.degree()));
  for (int i = 1; i <= m.degree(); ++i) {
    diffs[i - 1] = bs.lower_index[m.target(i) - 1] - bs.upper_index[i - 1];
  }
  return diffs;
}

/// Statistics of a marked perfect matching. The crossing count may be
/// negative: crossings between two marked edges count -1, between two
/// unmarked edges +1, mixed pairs 0.
struct MarkedStats {
  int unmarked_edges = 0;          // e
  int block_weak_excedances = 0;   // bwex
  int crossings = 0;               // cross, signed
  int weight = 0;                  // wt
  std::vector<int> block_differences;  // per upper vertex, marked-edge cuts

  friend bool operator==(const MarkedStats&, const MarkedStats&) = default;
};

/// Statistics via the portion decomposition:
///   e = e(unmarked), bwex = bwex(unmarked) + wex(marked),
///   cross = cross(unmarked) - cross(marked), wt = bwt(unmarked) + wt(marked).
inline MarkedStats stats(const MarkedPM& m) {
  const Portions p = portions(m);
  MarkedStats s;
  s.unmarked_edges = p.unmarked_portion.edge_count();
  s.block_weak_excedances =
      block_weak_excedances(p.unmarked_portion) + weak_excedances(p.marked_portion);
  s.crossings = crossings(p.unmarked_portion) - crossings(p.marked_portion.as_matching());
  s.weight = block_weight(p.unmarked_portion) + permutation_weight(p.marked_portion);
  s.block_differences = marked_block_differences(m);
  return s;
}

/// The same statistics from the marked-edge block structure: bwex counts
/// nonnegative block differences, wt sums bdiff over those and -bdiff - 1
/// over the rest, and crossings are counted pairwise with signs.
inline MarkedStats stats_from_blocks(const MarkedPM& m) {
  MarkedStats s;
  s.block_differences = marked_block_differences(m);
  for (int d : s.block_differences) {
    if (d >= 0) {
      ++s.block_weak_excedances;
      s.weight += d;
    } else {
      s.weight += -d - 1;
    }
  }
  const int n = m.degree();
  for (int i = 1; i <= n; ++i) {
    if (!m.is_marked(i)) ++s.unmarked_edges;
    for (int j = i + 1; j <= n; ++j) {
      if (m.target(i) <= m.target(j)) continue;
      const int marks = (m.is_marked(i) ? 1 : 0) + (m.is_marked(j) ? 1 : 0);
      if (marks == 0) ++s.crossings;
      if (marks == 2) --s.crossings;
    }
  }
  return s;
}

namespace detail {

// Fast path used by the enumerator, which guarantees the marking invariant.
template <typename Fn>
void visit_markings(const Composition& c, const PermutationPM& pm, Fn&& fn) {
  const int n = pm.degree();
  std::vector<int> homogeneous;
  std::vector<int> forced;
  for (int i = 1; i <= n; ++i) {
    if (is_homogeneous(c, i, pm.image(i))) {
      homogeneous.push_back(i);
    } else {
      forced.push_back(i);
    }
  }
  const std::size_t h = homogeneous.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h); ++mask) {
    std::vector<int> marked = forced;
    for (std::size_t b = 0; b < h; ++b) {
      if (mask & (std::uint64_t{1} << b)) marked.push_back(homogeneous[b]);
    }
    std::sort(marked.begin(), marked.end());
    fn(MarkedPM(c, pm, marked));
  }
}

}  // namespace detail

/// Visits every marked perfect matching over the composition: for each
/// perfect matching pi in lexicographic order, every admissible mark set,
/// i.e. forced inhomogeneous edges plus each subset of homogeneous edges.
/// A matching with h homogeneous edges is visited 2^h times.
template <typename Fn>
void for_each_marked(const Composition& c, Fn&& fn, int limit = limits::kMarkedDegree) {
  require_within_limit(c.total(), limit, "for_each_marked");
  for_each_perfect_matching(
      c.total(),
      [&](const PermutationPM& pm) { detail::visit_markings(c, pm, fn); },
      limit);
}

inline std::vector<MarkedPM> enumerate_marked(const Composition& c,
                                              int limit = limits::kMarkedDegree) {
  std::vector<MarkedPM> out;
  for_each_marked(c, [&](const MarkedPM& m) { out.push_back(m); }, limit);
  return out;
}

/// The signed sum over all marked perfect matchings:
///   sum of (-1)^e * y^bwex * q^(wt + cross).
/// wt + cross is checked to be nonnegative for every term; a negative value
/// would mean one of the statistics is computed wrongly.
inline Poly3 signed_sum(const Composition& c, int limit = limits::kMarkedDegree) {
  require_within_limit(c.total(), limit, "signed_sum");
  Poly3 sum;
  for_each_marked(
      c,
      [&](const MarkedPM& m) {
        const MarkedStats s = stats(m);
        const int exponent = s.weight + s.crossings;
        if (exponent < 0) {
          throw negative_exponent("signed_sum: wt + cross is negative for " +
                                  m.to_json().dump());
        }
        sum.add_term({0, s.block_weak_excedances, exponent},
                     s.unmarked_edges % 2 == 0 ? 1 : -1);
      },
      limit);
  return sum;
}

/// True when no index is mapped within its own composition interval.
inline bool is_derangement(const Composition& c, const PermutationPM& p) {
  for (int i = 1; i <= p.degree(); ++i) {
    if (is_homogeneous(c, i, p.image(i))) return false;
  }
  return true;
}

/// Visits the derangements of the composition in lexicographic order.
template <typename Fn>
void for_each_derangement(const Composition& c, Fn&& fn, int limit = limits::kMarkedDegree) {
  require_within_limit(c.total(), limit, "for_each_derangement");
  for_each_perfect_matching(
      c.total(),
      [&](const PermutationPM& p) {
        if (is_derangement(c, p)) fn(p);
      },
      limit);
}

inline std::vector<PermutationPM> enumerate_derangements(const Composition& c,
                                                         int limit = limits::kMarkedDegree) {
  std::vector<PermutationPM> out;
  for_each_derangement(c, [&](const PermutationPM& p) { out.push_back(p); }, limit);
  return out;
}

/// Generating function of the derangements by weak excedances and crossings.
inline Poly3 derangement_gf(const Composition& c, int limit = limits::kMarkedDegree) {
  Poly3 sum;
  for_each_derangement(
      c,
      [&](const PermutationPM& p) {
        sum.add_term({0, weak_excedances(p), permutation_crossings(p)}, 1);
      },
      limit);
  return sum;
}

}  // namespace qlag
