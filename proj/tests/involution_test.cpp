#include "qlag/involution.hpp"

#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "qlag/verify.hpp"

namespace qlag {
namespace {

MarkedPM example_232() {
  return MarkedPM(Composition({2, 3, 2}), PermutationPM({2, 1, 4, 7, 3, 6, 5}),
                  {2, 4, 7});
}

// Case-1 example over (3,2): pi = (3,4,2,1,5), inhomogeneous edges at 2 and 4
// marked, homogeneous block differences (1, 0, 0) at vertices 1, 3, 5.
MarkedPM case1_input() {
  return MarkedPM(Composition({3, 2}), PermutationPM({3, 4, 2, 1, 5}), {2, 4});
}

// Subcase-2a example over (3,4): pi = (2,1,6,5,7,4,3) with marks at
// 3, 5, 6, 7; the anchor edge e_6 has block difference -1 and is convertible.
MarkedPM case2a_input() {
  return MarkedPM(Composition({3, 4}), PermutationPM({2, 1, 6, 5, 7, 4, 3}),
                  {3, 5, 6, 7});
}

// Subcase-2b example over (2,5): pi = (2,3,1,7,5,4,6) with marks at
// 2, 3, 4, 6; the anchor edge e_6 is not convertible because of e_5.
MarkedPM case2b_input() {
  return MarkedPM(Composition({2, 5}), PermutationPM({2, 3, 1, 7, 5, 4, 6}),
                  {2, 3, 4, 6});
}

TEST(CrossesFromLeft, DefiningInequalities) {
  const MarkedPM m = example_232();
  EXPECT_TRUE(crosses_from_left(m, 1, 2));   // 1 < 2 and pi(1)=2 > pi(2)=1
  EXPECT_FALSE(crosses_from_left(m, 2, 1));
  EXPECT_FALSE(crosses_from_left(m, 1, 1));
  const MarkedPM nested(Composition({2}), PermutationPM({1, 2}), {});
  EXPECT_FALSE(crosses_from_left(nested, 1, 2));
  EXPECT_FALSE(crosses_from_left(nested, 2, 1));
}

TEST(Convertibility, FigureEdges) {
  EXPECT_TRUE(is_convertible(case2a_input(), 6));
  EXPECT_FALSE(is_convertible(case2b_input(), 6));
}

TEST(Convertibility, UncrossedEdgeIsConvertible) {
  const MarkedPM lone(Composition({1}), PermutationPM({1}), {});
  EXPECT_TRUE(is_convertible(lone, 1));
  const MarkedPM id2(Composition({2}), PermutationPM({1, 2}), {});
  EXPECT_TRUE(is_convertible(id2, 1));
  EXPECT_TRUE(is_convertible(id2, 2));
}

TEST(Convertibility, InhomogeneousEdgeRejected) {
  EXPECT_THROW(is_convertible(case2b_input(), 2), inhomogeneous_edge);
}

TEST(Convertibility, SymmetricUnderToggling) {
  for (int n = 1; n <= 4; ++n) {
    for (const Composition& c : compositions_of(n)) {
      for_each_marked(c, [](const MarkedPM& m) {
        for (int i : m.homogeneous_uppers()) {
          EXPECT_EQ(is_convertible(m, i), is_convertible(m.toggled(i), i));
        }
      });
    }
  }
}

TEST(PhiGolden, Case1TogglesMinimalLowerEndpoint) {
  const MarkedPM input = case1_input();
  const std::vector<int> diffs = marked_block_differences(input);
  EXPECT_EQ(diffs[0], 1);
  EXPECT_EQ(diffs[2], 0);
  EXPECT_EQ(diffs[4], 0);

  const auto [image, trace] = phi(input);
  EXPECT_EQ(trace.case_tag, PhiCase::case1);
  ASSERT_TRUE(trace.toggled_edge.has_value());
  EXPECT_EQ(*trace.toggled_edge, 3);
  EXPECT_EQ(input.target(3), 2);  // the toggled edge is (3, 2)
  EXPECT_EQ(image.marked_uppers(), (std::vector<int>{2, 3, 4}));

  const std::vector<int> image_diffs = marked_block_differences(image);
  EXPECT_EQ(image_diffs[0], 2);
  EXPECT_EQ(image_diffs[2], 0);
  EXPECT_EQ(image_diffs[4], 0);

  const auto [back, back_trace] = phi(image);
  EXPECT_EQ(back, input);
  EXPECT_EQ(back_trace.case_tag, PhiCase::case1);
}

TEST(PhiGolden, Case2aTogglesAnchorEdge) {
  const MarkedPM input = case2a_input();
  const std::vector<int> diffs = marked_block_differences(input);
  EXPECT_EQ(diffs[0], 0);
  EXPECT_EQ(diffs[1], 0);
  EXPECT_EQ(diffs[3], 1);
  EXPECT_EQ(diffs[4], 2);
  EXPECT_EQ(diffs[5], -1);

  const auto [image, trace] = phi(input);
  EXPECT_EQ(trace.case_tag, PhiCase::case2a);
  ASSERT_TRUE(trace.chosen_i.has_value());
  EXPECT_EQ(*trace.chosen_i, 6);
  EXPECT_EQ(*trace.toggled_edge, 6);
  EXPECT_EQ(input.target(6), 4);  // the toggled edge is (6, 4)
  EXPECT_EQ(image.marked_uppers(), (std::vector<int>{3, 5, 7}));

  const std::vector<int> image_diffs = marked_block_differences(image);
  EXPECT_EQ(image_diffs[0], 0);
  EXPECT_EQ(image_diffs[1], 0);
  EXPECT_EQ(image_diffs[3], 0);
  EXPECT_EQ(image_diffs[4], 1);
  EXPECT_EQ(image_diffs[5], -1);

  EXPECT_EQ(phi(image).first, input);
}

TEST(PhiGolden, Case2bTogglesFallbackEdge) {
  const MarkedPM input = case2b_input();
  const std::vector<int> diffs = marked_block_differences(input);
  EXPECT_EQ(diffs[0], 1);
  EXPECT_EQ(diffs[3], 1);
  EXPECT_EQ(diffs[4], 0);
  EXPECT_EQ(diffs[5], -1);
  EXPECT_EQ(diffs[6], -1);

  const auto [image, trace] = phi(input);
  EXPECT_EQ(trace.case_tag, PhiCase::case2b);
  EXPECT_EQ(*trace.chosen_i, 6);
  EXPECT_EQ(*trace.chosen_i_prime, 5);
  EXPECT_EQ(*trace.toggled_edge, 5);
  EXPECT_EQ(input.target(5), 5);  // the toggled edge is (5, 5)
  EXPECT_EQ(image.marked_uppers(), (std::vector<int>{2, 3, 4, 5, 6}));

  const std::vector<int> image_diffs = marked_block_differences(image);
  EXPECT_EQ(image_diffs[0], 1);
  EXPECT_EQ(image_diffs[3], 2);
  EXPECT_EQ(image_diffs[4], 0);
  EXPECT_EQ(image_diffs[5], -2);
  EXPECT_EQ(image_diffs[6], -1);

  const auto [back, back_trace] = phi(image);
  EXPECT_EQ(back, input);
  EXPECT_EQ(back_trace.case_tag, PhiCase::case2b);
  EXPECT_EQ(*back_trace.chosen_i_prime, 5);
}

TEST(PhiGolden, DerangementFormIsFixed) {
  const MarkedPM swap(Composition({1, 1}), PermutationPM({2, 1}), {1, 2});
  const auto [image, trace] = phi(swap);
  EXPECT_EQ(trace.case_tag, PhiCase::case0);
  EXPECT_FALSE(trace.toggled_edge.has_value());
  EXPECT_EQ(image, swap);
}

TEST(PhiGolden, PairCompositionOrbits) {
  const Composition c({1, 1});
  const PermutationPM id({1, 2});
  const MarkedPM none(c, id, {});
  const MarkedPM first(c, id, {1});
  const MarkedPM second(c, id, {2});
  const MarkedPM both(c, id, {1, 2});

  EXPECT_EQ(phi(none).first, first);
  EXPECT_EQ(phi(first).first, none);
  EXPECT_EQ(phi(second).first, both);
  EXPECT_EQ(phi(both).first, second);
  EXPECT_EQ(phi(none).second.case_tag, PhiCase::case1);
}

TEST(PhiTraceJson, ShapeAndOptionalFields) {
  const auto trace_2b = phi(case2b_input()).second;
  const nlohmann::json j = trace_2b.to_json();
  EXPECT_EQ(j["case"], "2b");
  EXPECT_EQ(j["toggled_edge"], 5);
  EXPECT_EQ(j["i"], 6);
  EXPECT_EQ(j["i_prime"], 5);

  const MarkedPM swap(Composition({1, 1}), PermutationPM({2, 1}), {1, 2});
  const nlohmann::json j0 = phi(swap).second.to_json();
  EXPECT_EQ(j0["case"], "0");
  EXPECT_FALSE(j0.contains("toggled_edge"));
}

TEST(BdiffUpdate, ExampleAndSingleEdge) {
  const MarkedPM m = example_232();
  for (int i : m.homogeneous_uppers()) {
    EXPECT_TRUE(bdiff_update_check(m, i)) << "edge " << i;
  }
  const MarkedPM lone(Composition({1}), PermutationPM({1}), {});
  EXPECT_TRUE(bdiff_update_check(lone, 1));
  EXPECT_THROW(bdiff_update_check(case2b_input(), 2), inhomogeneous_edge);
}

TEST(BdiffUpdate, ExhaustiveThroughDegreeFive) {
  for (int n = 1; n <= 5; ++n) {
    for (const Composition& c : compositions_of(n)) {
      for_each_marked(c, [](const MarkedPM& m) {
        for (int i : m.homogeneous_uppers()) {
          ASSERT_TRUE(bdiff_update_check(m, i)) << m.to_json().dump();
        }
      });
    }
  }
}

TEST(PhiProperties, ExhaustiveThroughDegreeFour) {
  for (int n = 1; n <= 4; ++n) {
    for (const Composition& c : compositions_of(n)) {
      for_each_marked(c, [](const MarkedPM& m) {
        const auto [image, trace] = phi(m);
        const MarkedStats before = stats(m);
        const MarkedStats after = stats(image);
        if (trace.case_tag == PhiCase::case0) {
          ASSERT_EQ(image, m);
          ASSERT_TRUE(m.homogeneous_uppers().empty());
        } else {
          ASSERT_TRUE(!m.homogeneous_uppers().empty());
          ASSERT_NE(image, m);
          ASSERT_EQ(phi(image).first, m);
          ASSERT_TRUE(is_convertible(m, *trace.toggled_edge));
          const int delta = after.unmarked_edges - before.unmarked_edges;
          ASSERT_TRUE(delta == 1 || delta == -1);
          if (trace.case_tag == PhiCase::case2b) {
            ASSERT_LT(*trace.chosen_i_prime, *trace.chosen_i);
          }
        }
        ASSERT_EQ(before.block_weak_excedances, after.block_weak_excedances);
        ASSERT_EQ(before.weight + before.crossings, after.weight + after.crossings);
      });
    }
  }
}

TEST(VerifyLemmas, PairComposition) {
  const LemmaReport report = verify_lemmas(Composition({1, 1}));
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.structures_checked, 5);
  EXPECT_EQ(report.orbits, 2);
  EXPECT_EQ(report.fixed_points, 1);
}

TEST(VerifyLemmas, SinglePartHasNoFixedPoints) {
  for (int n = 1; n <= 3; ++n) {
    const LemmaReport report = verify_lemmas(Composition({n}));
    EXPECT_TRUE(report.passed()) << n;
    EXPECT_EQ(report.fixed_points, 0) << n;
    EXPECT_TRUE(signed_sum(Composition({n})).is_zero()) << n;
  }
}

TEST(VerifyLemmas, ExampleCompositionPasses) {
  const LemmaReport report = verify_lemmas(Composition({2, 3, 2}));
  EXPECT_TRUE(report.passed()) << report.to_json().dump();
  const nlohmann::json j = report.to_json();
  EXPECT_EQ(j["composition"], nlohmann::json({2, 3, 2}));
  EXPECT_TRUE(j["failures"].empty());
  EXPECT_EQ(j["structures_checked"].get<long long>(), report.structures_checked);
}

}  // namespace
}  // namespace qlag
