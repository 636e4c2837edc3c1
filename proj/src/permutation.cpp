#include "defprobe/permutation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "defprobe/errors.hpp"

namespace defprobe {

namespace {

void validate_elements(const std::vector<int>& elems) {
    const int m = static_cast<int>(elems.size());
    if (m < 1) throw std::invalid_argument("permutation must have at least one element");
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (int v : elems) {
        if (v < 1 || v > m) {
            throw std::invalid_argument("permutation value " + std::to_string(v) +
                                        " outside 1.." + std::to_string(m));
        }
        if (seen[static_cast<std::size_t>(v - 1)]++) {
            throw std::invalid_argument("duplicate value " + std::to_string(v) +
                                        " in permutation");
        }
    }
}

constexpr int kMaxRankLength = 20;  // 20! < 2^63, 21! overflows

}  // namespace

Permutation::Permutation(std::vector<int> elements) {
    validate_elements(elements);
    elems_ = std::move(elements);
}

Permutation Permutation::identity(int m) {
    if (m < 1) throw std::invalid_argument("permutation length must be >= 1");
    std::vector<int> e(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    return trusted_permutation(std::move(e));
}

Permutation trusted_permutation(std::vector<int> elements) {
    return Permutation(std::move(elements), Permutation::Trusted{});
}

std::uint64_t factorial(int m) {
    if (m < 0) throw std::invalid_argument("factorial of negative value");
    if (m > kMaxRankLength) {
        throw capability_error("factorial(" + std::to_string(m) + ") exceeds 64 bits (max m = 20)");
    }
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t factorial_capped(int m) {
    if (m > kMaxRankLength) return ~0ULL;
    return factorial(m);
}

std::uint64_t lexicographic_rank(const Permutation& pi) {
    const int m = pi.size();
    if (m > kMaxRankLength) {
        throw capability_error("lexicographic rank needs m <= 20, got m = " + std::to_string(m));
    }
    // Factorial number system: digit i counts smaller values to the right.
    // O(m^2) is fine at m <= 20.
    std::uint64_t rank = 0;
    std::uint64_t base = factorial(m - 1);
    for (int i = 0; i < m - 1; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < m; ++j) smaller += pi[j] < pi[i];
        rank += static_cast<std::uint64_t>(smaller) * base;
        base /= static_cast<std::uint64_t>(m - 1 - i);
    }
    return rank;
}

Permutation permutation_from_rank(int m, std::uint64_t rank) {
    if (m < 1) throw std::invalid_argument("permutation length must be >= 1");
    if (m > kMaxRankLength) {
        throw capability_error("unranking needs m <= 20, got m = " + std::to_string(m));
    }
    const std::uint64_t total = factorial(m);
    if (rank >= total) throw std::invalid_argument("rank out of range for m");
    std::vector<int> pool(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m));
    std::uint64_t base = total / static_cast<std::uint64_t>(m);
    for (int i = 0; i < m; ++i) {
        const auto digit = static_cast<std::size_t>(rank / base);
        rank %= base;
        out.push_back(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
        if (i < m - 1) base /= static_cast<std::uint64_t>(m - 1 - i);
    }
    return trusted_permutation(std::move(out));
}

Permutation random_permutation(int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("permutation length must be >= 1");
    std::vector<int> e(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    for (int i = m - 1; i > 0; --i) {
        const auto j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
    }
    return trusted_permutation(std::move(e));
}

}  // namespace defprobe
