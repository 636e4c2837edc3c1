#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "defprobe/rng.hpp"

namespace defprobe {

// Arrangement of the integers 1..m, m >= 1. Construction validates
// bijectivity; positions are 0-based in code, values are 1-based as usual.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> elements);
    static Permutation identity(int m);

    int size() const { return static_cast<int>(elems_.size()); }
    int operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& elements() const { return elems_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    struct Trusted {};
    Permutation(std::vector<int> e, Trusted) : elems_(std::move(e)) {}
    friend Permutation trusted_permutation(std::vector<int> elements);

    std::vector<int> elems_;
};

// Fast path for construction sites that guarantee validity themselves
// (Fisher-Yates output, factorial unranking, mutation operators).
Permutation trusted_permutation(std::vector<int> elements);

// m! as exact 64-bit value; capability_error for m > 20.
std::uint64_t factorial(int m);

// m! saturated to UINT64_MAX for m > 20; for "n <= m!" style guards.
std::uint64_t factorial_capped(int m);

// Zero-based position of pi in the lexicographic order of all length-m
// permutations (factorial number system, exact integer arithmetic).
// Bijection onto 0..m!-1; capability_error for m > 20.
std::uint64_t lexicographic_rank(const Permutation& pi);
Permutation permutation_from_rank(int m, std::uint64_t rank);

// Uniform random permutation (Fisher-Yates).
Permutation random_permutation(int m, Rng& rng);

}  // namespace defprobe
