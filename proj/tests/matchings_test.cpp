#include "qlag/matchings.hpp"

#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace qlag {
namespace {

// Degree-7 example: edges 1-4, 2-6, 3-2, 5-1, 7-3; uppers 4, 6 and lowers
// 5, 7 unmatched.
Matching example_matching() {
  return Matching::from_edges(7, {{1, 4}, {2, 6}, {3, 2}, {5, 1}, {7, 3}});
}

long long matching_count_oracle(int n) {
  // sum over k of C(n,k)^2 * k!
  auto binom = [](int a, int b) {
    long long r = 1;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  long long total = 0;
  long long factorial = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    total += binom(n, k) * binom(n, k) * factorial;
  }
  return total;
}

TEST(MatchingEnumeration, CountsMatchClosedForm) {
  EXPECT_EQ(enumerate_matchings(0).size(), 1u);
  EXPECT_EQ(enumerate_matchings(2).size(), 7u);
  EXPECT_EQ(enumerate_matchings(3).size(), 34u);
  for (int n = 0; n <= 6; ++n) {
    long long count = 0;
    for_each_matching(n, [&](const Matching&) { ++count; });
    EXPECT_EQ(count, matching_count_oracle(n)) << "n=" << n;
  }
}

TEST(MatchingEnumeration, NoDuplicatesAndInvariantsHold) {
  for (int n = 0; n <= 4; ++n) {
    std::set<std::string> seen;
    for_each_matching(n, [&](const Matching& m) {
      EXPECT_TRUE(seen.insert(m.to_json().dump()).second);
      // partial injection: as many matched uppers as matched lowers
      int lowers = 0;
      for (bool used : m.lower_matched()) lowers += used ? 1 : 0;
      EXPECT_EQ(m.edge_count(), lowers);
    });
    EXPECT_EQ(static_cast<long long>(seen.size()), matching_count_oracle(n));
  }
}

TEST(MatchingEnumeration, DegreeTwoOrderIsGrouped) {
  const auto all = enumerate_matchings(2);
  using E = std::vector<std::pair<int, int>>;
  ASSERT_EQ(all.size(), 7u);
  EXPECT_EQ(all[0].edges(), E{});
  EXPECT_EQ(all[1].edges(), (E{{1, 1}}));
  EXPECT_EQ(all[2].edges(), (E{{1, 2}}));
  EXPECT_EQ(all[3].edges(), (E{{2, 1}}));
  EXPECT_EQ(all[4].edges(), (E{{2, 2}}));
  EXPECT_EQ(all[5].edges(), (E{{1, 1}, {2, 2}}));
  EXPECT_EQ(all[6].edges(), (E{{1, 2}, {2, 1}}));
}

TEST(MatchingEnumeration, LimitEnforced) {
  EXPECT_THROW(for_each_matching(9, [](const Matching&) {}), limit_exceeded);
  EXPECT_NO_THROW(for_each_matching(9, [](const Matching&) {}, 9));
  EXPECT_THROW(for_each_matching(-1, [](const Matching&) {}), error);
}

TEST(PerfectMatchingEnumeration, CountsAndLexOrder) {
  EXPECT_EQ(enumerate_perfect_matchings(0).size(), 1u);
  EXPECT_EQ(enumerate_perfect_matchings(1).size(), 1u);
  const auto all = enumerate_perfect_matchings(3);
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(all.front().one_line(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(all.back().one_line(), (std::vector<int>{3, 2, 1}));
}

TEST(MatchingBasics, ConstructionValidation) {
  EXPECT_THROW(Matching::from_edges(2, {{1, 3}}), vertex_out_of_range);
  EXPECT_THROW(Matching::from_edges(2, {{0, 1}}), vertex_out_of_range);
  EXPECT_THROW(Matching::from_edges(3, {{1, 2}, {1, 3}}), invalid_structure);
  EXPECT_THROW(Matching::from_edges(3, {{1, 2}, {3, 2}}), invalid_structure);
  EXPECT_THROW(PermutationPM({1, 1}), invalid_structure);
  EXPECT_THROW(PermutationPM({2, 3}), invalid_structure);
}

TEST(MatchingBasics, JsonRoundTrip) {
  const Matching m = example_matching();
  EXPECT_EQ(Matching::from_json(m.to_json()), m);
  const auto j = m.to_json();
  EXPECT_EQ(j["degree"], 7);
  EXPECT_EQ(j["edges"][0], nlohmann::json({1, 4}));
  EXPECT_THROW(Matching::from_json(nlohmann::json{{"degree", 2}}), parse_error);
}

TEST(Crossings, ExampleHasSeven) {
  EXPECT_EQ(crossings(example_matching()), 7);
}

TEST(Crossings, IdentityHasNone) {
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i + 1;
    EXPECT_EQ(crossings(PermutationPM(id).as_matching()), 0);
  }
}

TEST(Crossings, ReversalInvertsAllPairs) {
  EXPECT_EQ(crossings(PermutationPM({3, 2, 1}).as_matching()), 3);
}

TEST(Blocks, ExampleBlockStructure) {
  const BlockStructure bs = block_structure(example_matching());
  // upper blocks {1..4}, {5,6}, {7}; lower blocks {1..5}, {6,7}
  EXPECT_EQ(bs.upper_index, (std::vector<int>{1, 1, 1, 1, 2, 2, 3}));
  EXPECT_EQ(bs.lower_index, (std::vector<int>{1, 1, 1, 1, 1, 2, 2}));
}

TEST(Blocks, PerfectMatchingIsOneBlockPerRow) {
  const BlockStructure bs = block_structure(PermutationPM({2, 3, 1}).as_matching());
  EXPECT_EQ(bs.upper_index, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(bs.lower_index, (std::vector<int>{1, 1, 1}));
}

TEST(Blocks, EmptyMatchingSplitsEveryVertex) {
  const BlockStructure bs = block_structure(Matching(2));
  EXPECT_EQ(bs.upper_index, (std::vector<int>{1, 2}));
  EXPECT_EQ(bs.lower_index, (std::vector<int>{1, 2}));
}

TEST(Blocks, IndexCountingCharacterization) {
  // bind(i) = 1 + number of unmatched vertices of the row strictly before i,
  // and a block ends exactly at unmatched vertices and at n.
  for (int n = 0; n <= 4; ++n) {
    for_each_matching(n, [&](const Matching& m) {
      const BlockStructure bs = block_structure(m);
      const auto lower = m.lower_matched();
      int unmatched_upper = 0;
      int unmatched_lower = 0;
      for (int i = 1; i <= n; ++i) {
        EXPECT_EQ(bs.upper_index[i - 1], 1 + unmatched_upper);
        EXPECT_EQ(bs.lower_index[i - 1], 1 + unmatched_lower);
        if (i < n) {
          EXPECT_EQ(bs.upper_index[i] - bs.upper_index[i - 1],
                    m.is_matched(i) ? 0 : 1);
        }
        if (!m.is_matched(i)) ++unmatched_upper;
        if (!lower[i - 1]) ++unmatched_lower;
      }
    });
  }
}

TEST(BlockDifference, ExampleEdges) {
  const Matching m = example_matching();
  EXPECT_EQ(block_difference(m, 7), -2);
  EXPECT_EQ(block_difference(m, 2), 1);
  EXPECT_EQ(block_difference(m, 1), 0);
}

TEST(BlockDifference, UnmatchedVertexRejected) {
  EXPECT_THROW(block_difference(example_matching(), 4), unmatched_vertex);
  EXPECT_THROW(block_difference(example_matching(), 8), vertex_out_of_range);
}

TEST(BlockDifference, PerfectMatchingEdgesAreZero) {
  for_each_perfect_matching(4, [](const PermutationPM& p) {
    const Matching m = p.as_matching();
    for (int i = 1; i <= 4; ++i) EXPECT_EQ(block_difference(m, i), 0);
  });
}

TEST(BlockStatistics, ExampleValues) {
  // block differences of the example are (0, 1, 0, -1, -2), so bwex = 3 and
  // bwt = 1 + (0 + 1) = 2.
  const Matching m = example_matching();
  EXPECT_EQ(block_weak_excedances(m), 3);
  EXPECT_EQ(block_weight(m), 2);
}

TEST(BlockStatistics, PerfectMatchings) {
  for_each_perfect_matching(4, [](const PermutationPM& p) {
    EXPECT_EQ(block_weak_excedances(p.as_matching()), 4);
    EXPECT_EQ(block_weight(p.as_matching()), 0);
  });
}

TEST(PermutationStatistics, Identity) {
  std::vector<int> id{1, 2, 3, 4, 5};
  const PermutationPM p(id);
  EXPECT_EQ(weak_excedances(p), 5);
  EXPECT_EQ(permutation_crossings(p), 0);
  EXPECT_EQ(permutation_weight(p), 0);
  EXPECT_EQ(overlapping_pairs(p), 0);
}

TEST(PermutationStatistics, FrozenExamples) {
  const PermutationPM cycle({2, 3, 1});
  EXPECT_EQ(weak_excedances(cycle), 2);
  EXPECT_EQ(permutation_crossings(cycle), 1);
  EXPECT_EQ(permutation_weight(cycle), 3);
  EXPECT_EQ(overlapping_pairs(cycle), 1);

  const PermutationPM other({3, 1, 2});
  EXPECT_EQ(weak_excedances(other), 1);
  EXPECT_EQ(permutation_crossings(other), 0);

  const PermutationPM swap({2, 1});
  EXPECT_EQ(permutation_weight(swap), 1);
  EXPECT_EQ(overlapping_pairs(swap), 0);
}

TEST(PermutationStatistics, WeightSplitsOverlapsAndCrossings) {
  // ov = wt - cross for every perfect matching of degree <= 6; the larger
  // degrees run in the acceptance suite.
  for (int n = 0; n <= 6; ++n) {
    for_each_perfect_matching(n, [](const PermutationPM& p) {
      EXPECT_EQ(overlapping_pairs(p),
                permutation_weight(p) - crossings(p.as_matching()));
    });
  }
}

TEST(PermutationStatistics, OverlapsEqualPermutationCrossings) {
  for (int n = 0; n <= 6; ++n) {
    for_each_perfect_matching(n, [](const PermutationPM& p) {
      EXPECT_EQ(overlapping_pairs(p), permutation_crossings(p));
    });
  }
}

}  // namespace
}  // namespace qlag
