#pragma once

#include <utility>
#include <vector>

#include "qlag/errors.hpp"
#include "qlag/limits.hpp"
#include "qlag/matchings.hpp"
#include "qlag/poly3.hpp"

namespace qlag {

/// Three-term recurrence weights read off the defining relation: the degree-n
/// step subtracts b(n) = y*[n+1]_q + [n]_q and lam(n) = y*[n]_q^2. The same
/// weights drive the lattice-path moment route: a level step at height h
/// carries b(h), a down step from height h carries lam(h), up steps carry 1.
struct MotzkinWeights {
  Poly3 level(int h) const { return Poly3::y() * q_integer(h + 1) + q_integer(h); }
  Poly3 down(int h) const { return Poly3::y() * q_integer(h) * q_integer(h); }
};

/// Moments mu_0..mu_max built once via the lattice-path recurrence.
class MomentTable {
 public:
  static MomentTable build(int max_degree, int limit = limits::kMomentDegree) {
    require_within_limit(max_degree, limit, "MomentTable::build");
    const MotzkinWeights w;
    MomentTable table;
    table.mu_.reserve(static_cast<std::size_t>(max_degree) + 1);
    // weight_at[h] accumulates the total weight of length-k path prefixes
    // ending at height h; the height-0 entry after k steps is mu_k.
    std::vector<Poly3> weight_at(static_cast<std::size_t>(max_degree / 2) + 2);
    weight_at[0] = Poly3::one();
    table.mu_.push_back(weight_at[0]);
    for (int step = 1; step <= max_degree; ++step) {
      std::vector<Poly3> next(weight_at.size());
      for (std::size_t h = 0; h < weight_at.size(); ++h) {
        if (weight_at[h].is_zero()) continue;
        next[h] += weight_at[h] * w.level(static_cast<int>(h));
        if (h + 1 < next.size()) next[h + 1] += weight_at[h];
        if (h > 0) next[h - 1] += weight_at[h] * w.down(static_cast<int>(h));
      }
      weight_at = std::move(next);
      table.mu_.push_back(weight_at[0]);
    }
    return table;
  }

  int max_degree() const { return static_cast<int>(mu_.size()) - 1; }

  const Poly3& moment(int k) const {
    if (k < 0 || k > max_degree()) {
      throw table_too_short("moment table covers degrees 0.." +
                            std::to_string(max_degree()) + ", requested " +
                            std::to_string(k));
    }
    return mu_[static_cast<std::size_t>(k)];
  }

 private:
  std::vector<Poly3> mu_;
};

/// Monic degree-n polynomial from the three-term recurrence
/// L_{n+1} = (x - y*[n+1]_q - [n]_q) L_n - y*[n]_q^2 L_{n-1},
/// with L_0 = 1 and L_1 = x - y.
inline Poly3 laguerre_recurrence(int n, int limit = limits::kLaguerreRecurrence) {
  require_within_limit(n, limit, "laguerre_recurrence");
  Poly3 prev = Poly3::one();
  if (n == 0) return prev;
  Poly3 cur = Poly3::x() - Poly3::y();
  const MotzkinWeights w;
  for (int m = 1; m < n; ++m) {
    Poly3 next = (Poly3::x() - w.level(m)) * cur - w.down(m) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// The same polynomial as a signed sum over all matchings of degree n:
/// each matching contributes (-1)^e * y^bwex * q^(bwt + cross) * x^(n - e).
inline Poly3 laguerre_combinatorial(int n, int limit = limits::kLaguerreCombinatorial) {
  require_within_limit(n, limit, "laguerre_combinatorial");
  Poly3 sum;
  for_each_matching(
      n,
      [&](const Matching& m) {
        const int e = m.edge_count();
        const Monomial mono{n - e, block_weak_excedances(m),
                            block_weight(m) + crossings(m)};
        sum.add_term(mono, e % 2 == 0 ? 1 : -1);
      },
      limit);
  return sum;
}

/// mu_n as the generating function of S_n by weak excedances and crossings.
inline Poly3 moment_permutation(int n, int limit = limits::kMomentDegree) {
  require_within_limit(n, limit, "moment_permutation");
  Poly3 sum;
  for_each_perfect_matching(
      n,
      [&](const PermutationPM& p) {
        sum.add_term({0, weak_excedances(p), permutation_crossings(p)}, 1);
      },
      limit);
  return sum;
}

/// mu_n summed over perfect matchings with exponent wt - cross instead of the
/// overlap count.
inline Poly3 moment_matching(int n, int limit = limits::kMomentDegree) {
  require_within_limit(n, limit, "moment_matching");
  Poly3 sum;
  for_each_perfect_matching(
      n,
      [&](const PermutationPM& p) {
        const int exponent = permutation_weight(p) - crossings(p.as_matching());
        if (exponent < 0) {
          throw negative_exponent("moment_matching: wt - cross went negative");
        }
        sum.add_term({0, weak_excedances(p), exponent}, 1);
      },
      limit);
  return sum;
}

namespace detail {

template <typename Fn>
void for_each_motzkin_suffix(int remaining, int height, Poly3& weight,
                             const MotzkinWeights& w, Fn&& fn) {
  if (remaining == 0) {
    if (height == 0) fn(weight);
    return;
  }
  if (height > remaining) return;  // cannot come back down in time
  {
    Poly3 saved = weight;
    weight *= w.level(height);
    for_each_motzkin_suffix(remaining - 1, height, weight, w, fn);
    weight = std::move(saved);
  }
  for_each_motzkin_suffix(remaining - 1, height + 1, weight, w, fn);
  if (height > 0) {
    Poly3 saved = weight;
    weight *= w.down(height);
    for_each_motzkin_suffix(remaining - 1, height - 1, weight, w, fn);
    weight = std::move(saved);
  }
}

}  // namespace detail

/// mu_n as an explicit sum over weighted lattice paths of length n that stay
/// at nonnegative height and start and end at 0.
inline Poly3 moment_motzkin(int n, int limit = limits::kMomentDegree) {
  require_within_limit(n, limit, "moment_motzkin");
  const MotzkinWeights w;
  Poly3 sum;
  Poly3 weight = Poly3::one();
  detail::for_each_motzkin_suffix(n, 0, weight, w, [&](const Poly3& path_weight) {
    sum += path_weight;
  });
  return sum;
}

/// Applies the linear functional by replacing each power x^a with mu_a.
/// The result has x-degree 0 and is linear in p.
inline Poly3 apply_functional(const Poly3& p, const MomentTable& table) {
  Poly3 result;
  for (const auto& [m, c] : p.terms()) {
    Poly3 piece = Poly3::term({0, m.y_deg, m.q_deg}, c) * table.moment(m.x_deg);
    result += piece;
  }
  return result;
}

/// Linearization coefficient: the functional applied to the product of the
/// recurrence polynomials for the given parts. An empty list of parts gives
/// the empty product, so the result is 1.
inline Poly3 linearize_functional(const std::vector<int>& parts,
                                  int limit = limits::kMarkedDegree) {
  int total = 0;
  for (int p : parts) {
    if (p < 1) throw error("linearize_functional: parts must be positive");
    total += p;
  }
  require_within_limit(total, limit, "linearize_functional");
  Poly3 product = Poly3::one();
  for (int p : parts) product *= laguerre_recurrence(p, limit);
  return apply_functional(product, MomentTable::build(total, limit));
}

}  // namespace qlag
