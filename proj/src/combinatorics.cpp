#include "defprobe/combinatorics.hpp"

#include <stdexcept>

namespace defprobe {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    // Multiplicative form with exact intermediate division; saturate through
    // 128-bit products so huge n never wraps.
    unsigned __int128 result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        result = result * (n - i) / (i + 1);
        if (result > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(result);
}

std::vector<int> combination_unrank(std::uint64_t rank, int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("combination size out of range");
    // Combinatorial number system, lexicographic order. Every binomial
    // probed here is at most C(n, k), so the caller's guard bounds them.
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    int v = 0;
    for (int slot = 0; slot < k; ++slot) {
        for (;; ++v) {
            if (v >= n) throw std::invalid_argument("combination rank out of range");
            const std::uint64_t block =
                binomial_capped(static_cast<std::uint64_t>(n - 1 - v),
                                static_cast<std::uint64_t>(k - 1 - slot), ~0ULL - 1);
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(v);
        ++v;
    }
    return out;
}

bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

}  // namespace defprobe
