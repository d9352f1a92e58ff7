#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlag/errors.hpp"
#include "qlag/limits.hpp"

namespace qlag {

/// Matching of degree n: a partial injection from the upper vertices 1..n to
/// the lower vertices 1..n, drawn as two rows with edges (i, pi(i)).
/// Vertex numbering is 1-based at every interface.
class Matching {
 public:
  explicit Matching(int degree) : degree_(degree), target_(degree, 0) {
    if (degree < 0) throw invalid_structure("matching degree must be nonnegative");
  }

  static Matching from_edges(int degree, const std::vector<std::pair<int, int>>& edges) {
    Matching m(degree);
    std::vector<bool> lower_used(static_cast<std::size_t>(degree) + 1, false);
    for (auto [i, j] : edges) {
      if (i < 1 || i > degree || j < 1 || j > degree) {
        throw vertex_out_of_range("edge endpoint outside [1, n]");
      }
      if (m.target_[i - 1] != 0) throw invalid_structure("duplicate upper endpoint");
      if (lower_used[j]) throw invalid_structure("duplicate lower endpoint");
      m.target_[i - 1] = j;
      lower_used[j] = true;
    }
    return m;
  }

  int degree() const { return degree_; }

  bool is_matched(int i) const {
    check_vertex(i);
    return target_[i - 1] != 0;
  }

  /// pi(i); the vertex must be matched.
  int target(int i) const {
    check_vertex(i);
    if (target_[i - 1] == 0) {
      throw unmatched_vertex("upper vertex " + std::to_string(i) + " is unmatched");
    }
    return target_[i - 1];
  }

  int edge_count() const {
    return static_cast<int>(std::count_if(target_.begin(), target_.end(),
                                          [](int t) { return t != 0; }));
  }

  bool is_perfect() const { return edge_count() == degree_; }

  /// Edges (i, pi(i)) sorted by upper endpoint.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= degree_; ++i) {
      if (target_[i - 1] != 0) e.emplace_back(i, target_[i - 1]);
    }
    return e;
  }

  /// Flags lower vertices that are some edge's endpoint; index j-1 for vertex j.
  std::vector<bool> lower_matched() const {
    std::vector<bool> used(static_cast<std::size_t>(degree_), false);
    for (int t : target_) {
      if (t != 0) used[t - 1] = true;
    }
    return used;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [i, j] : edges()) arr.push_back({i, j});
    return {{"degree", degree_}, {"edges", arr}};
  }

  static Matching from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("edges")) {
      throw parse_error("matching JSON must have keys degree, edges");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw parse_error("edge must be a pair [i, j]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return from_edges(j.at("degree").get<int>(), edges);
  }

 private:
  void check_vertex(int i) const {
    if (i < 1 || i > degree_) {
      throw vertex_out_of_range("vertex " + std::to_string(i) + " outside [1, " +
                                std::to_string(degree_) + "]");
    }
  }

  int degree_;
  std::vector<int> target_;  // 0 marks an unmatched upper vertex
};

/// Perfect matching of degree n identified with the permutation sigma given
/// by sigma(i) = pi(i).
class PermutationPM {
 public:
  explicit PermutationPM(std::vector<int> one_line) : perm_(std::move(one_line)) {
    const int n = static_cast<int>(perm_.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm_) {
      if (v < 1 || v > n || seen[v - 1]) {
        throw invalid_structure("one-line notation is not a permutation of [n]");
      }
      seen[v - 1] = true;
    }
  }

  int degree() const { return static_cast<int>(perm_.size()); }

  /// sigma(i), 1-based.
  int image(int i) const {
    if (i < 1 || i > degree()) {
      throw vertex_out_of_range("index " + std::to_string(i) + " outside [1, n]");
    }
    return perm_[i - 1];
  }

  const std::vector<int>& one_line() const { return perm_; }

  Matching as_matching() const {
    Matching m(degree());
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= degree(); ++i) edges.emplace_back(i, perm_[i - 1]);
    return Matching::from_edges(degree(), edges);
  }

  friend bool operator==(const PermutationPM&, const PermutationPM&) = default;

 private:
  std::vector<int> perm_;
};

/// Block indices of the two rows: entry i-1 holds the index of the block
/// containing vertex i. Rows are cut after each unmatched vertex.
struct BlockStructure {
  std::vector<int> upper_index;
  std::vector<int> lower_index;
};

/// bind(i) = 1 + number of unmatched vertices of the row before i.
inline BlockStructure block_structure(const Matching& m) {
  const int n = m.degree();
  BlockStructure bs{std::vector<int>(n), std::vector<int>(n)};
  const std::vector<bool> lower = m.lower_matched();
  int upper_cuts = 0;
  int lower_cuts = 0;
  for (int i = 1; i <= n; ++i) {
    bs.upper_index[i - 1] = 1 + upper_cuts;
    bs.lower_index[i - 1] = 1 + lower_cuts;
    if (!m.is_matched(i)) ++upper_cuts;
    if (!lower[i - 1]) ++lower_cuts;
  }
  return bs;
}

/// Block difference bind_L(pi(i)) - bind_U(i) of the edge at upper vertex i.
inline int block_difference(const Matching& m, int i) {
  const int j = m.target(i);
  const BlockStructure bs = block_structure(m);
  return bs.lower_index[j - 1] - bs.upper_index[i - 1];
}

namespace detail {

inline std::vector<int> all_block_differences(const Matching& m) {
  const BlockStructure bs = block_structure(m);
  std::vector<int> diffs;
  for (auto [i, j] : m.edges()) {
    diffs.push_back(bs.lower_index[j - 1] - bs.upper_index[i - 1]);
  }
  return diffs;
}

}  // namespace detail

/// Edge pairs (e_i, e_j) with i < j and pi(i) > pi(j); these are exactly the
/// pairs that intersect in the two-row drawing.
inline int crossings(const Matching& m) {
  const auto edges = m.edges();
  int count = 0;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      if (edges[a].second > edges[b].second) ++count;
    }
  }
  return count;
}

/// Number of edges with nonnegative block difference.
inline int block_weak_excedances(const Matching& m) {
  int count = 0;
  for (int d : detail::all_block_differences(m)) {
    if (d >= 0) ++count;
  }
  return count;
}

/// Sum of bdiff over edges with bdiff >= 0 plus (-bdiff - 1) over the rest.
inline int block_weight(const Matching& m) {
  int total = 0;
  for (int d : detail::all_block_differences(m)) {
    total += d >= 0 ? d : -d - 1;
  }
  return total;
}

/// Indices with sigma(i) >= i.
inline int weak_excedances(const PermutationPM& p) {
  int count = 0;
  for (int i = 1; i <= p.degree(); ++i) {
    if (p.image(i) >= i) ++count;
  }
  return count;
}

/// Permutation crossings: pairs with i < j <= sigma(i) < sigma(j) or
/// sigma(i) < sigma(j) < i < j. Distinct from the matching crossing count.
inline int permutation_crossings(const PermutationPM& p) {
  const int n = p.degree();
  int count = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const int si = p.image(i);
      const int sj = p.image(j);
      if ((j <= si && si < sj) || (si < sj && sj < i)) ++count;
    }
  }
  return count;
}

/// Sum of sigma(i) - i over weak excedances plus i - sigma(i) - 1 elsewhere.
inline int permutation_weight(const PermutationPM& p) {
  int total = 0;
  for (int i = 1; i <= p.degree(); ++i) {
    const int si = p.image(i);
    total += si >= i ? si - i : i - si - 1;
  }
  return total;
}

/// Overlapping edge pairs of the perfect matching: ordered pairs (i, j) with
/// i < j <= pi(i) < pi(j) or pi(j) < pi(i) < j < i.
inline int overlapping_pairs(const PermutationPM& p) {
  const int n = p.degree();
  int count = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const int pi = p.image(i);
      const int pj = p.image(j);
      if (i < j && j <= pi && pi < pj) ++count;
      if (pj < pi && pi < j && j < i) ++count;
    }
  }
  return count;
}

namespace detail {

// Size-k subsets of [n] in lexicographic order as increasing sequences.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 1);
  while (true) {
    fn(subset);
    int i = k - 1;
    while (i >= 0 && subset[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

}  // namespace detail

/// Visits every matching of degree n exactly once: by edge count, then
/// matched upper-vertex subsets in lexicographic order, then lower-vertex
/// subsets likewise, then target sequences in lexicographic one-line order.
template <typename Fn>
void for_each_matching(int n, Fn&& fn, int limit = limits::kMatchingDegree) {
  require_within_limit(n, limit, "for_each_matching");
  for (int k = 0; k <= n; ++k) {
    detail::for_each_subset(n, k, [&](const std::vector<int>& uppers) {
      detail::for_each_subset(n, k, [&](const std::vector<int>& lowers) {
        std::vector<int> targets = lowers;
        do {
          Matching m(n);
          std::vector<std::pair<int, int>> edges;
          for (int idx = 0; idx < k; ++idx) edges.emplace_back(uppers[idx], targets[idx]);
          fn(Matching::from_edges(n, edges));
        } while (std::next_permutation(targets.begin(), targets.end()));
      });
    });
  }
}

inline std::vector<Matching> enumerate_matchings(int n, int limit = limits::kMatchingDegree) {
  std::vector<Matching> out;
  for_each_matching(n, [&](const Matching& m) { out.push_back(m); }, limit);
  return out;
}

/// Visits all n! perfect matchings in lexicographic one-line order.
template <typename Fn>
void for_each_perfect_matching(int n, Fn&& fn, int limit = limits::kPermutationDegree) {
  require_within_limit(n, limit, "for_each_perfect_matching");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    fn(PermutationPM(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline std::vector<PermutationPM> enumerate_perfect_matchings(
    int n, int limit = limits::kPermutationDegree) {
  std::vector<PermutationPM> out;
  for_each_perfect_matching(n, [&](const PermutationPM& p) { out.push_back(p); }, limit);
  return out;
}

}  // namespace qlag
