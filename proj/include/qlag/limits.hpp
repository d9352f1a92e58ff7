#pragma once

#include <string>

#include "qlag/errors.hpp"

namespace qlag {

// Default degree caps. They bound accidental CLI misuse, not the math: every
// routine accepts an explicit limit argument that may raise them.
namespace limits {

inline constexpr int kMatchingDegree = 8;          // all matchings of degree n
inline constexpr int kPermutationDegree = 8;       // n! perfect matchings
inline constexpr int kLaguerreCombinatorial = 6;   // matching-sum expansion
inline constexpr int kLaguerreRecurrence = 12;
inline constexpr int kMomentDegree = 8;
inline constexpr int kMarkedDegree = 7;            // marked perfect matchings

}  // namespace limits

inline void require_within_limit(int n, int limit, const char* what) {
  if (n < 0) throw error(std::string(what) + ": negative degree " + std::to_string(n));
  if (n > limit) {
    throw limit_exceeded(std::string(what) + ": degree " + std::to_string(n) +
                         " exceeds limit " + std::to_string(limit));
  }
}

}  // namespace qlag
