#pragma once

#include <cstdint>
#include <vector>

namespace defprobe {

// C(n, k) saturated at `cap` (exact while <= cap). Used both for enumeration
// guards and for combination unranking, where every needed value is bounded
// by the guard.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

// Lexicographic combination of k ascending indices out of 0..n-1 at the
// given rank (combinatorial number system).
std::vector<int> combination_unrank(std::uint64_t rank, int n, int k);

// Advance ascending indices to the next combination; false after the last.
bool next_combination(std::vector<int>& c, int n);

}  // namespace defprobe
