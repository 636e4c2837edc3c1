#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "defprobe/matrix.hpp"
#include "defprobe/permutation.hpp"
#include "defprobe/rng.hpp"

namespace testutil {

// All m! permutations in lexicographic order, independent of the library's
// unranking (std::next_permutation is the reference).
inline std::vector<defprobe::Permutation> all_permutations(int m) {
    std::vector<int> e(static_cast<std::size_t>(m));
    std::iota(e.begin(), e.end(), 1);
    std::vector<defprobe::Permutation> out;
    do {
        out.emplace_back(e);
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

// Random symmetric matrix with zero diagonal and entries in [0, 1).
inline defprobe::Matrix random_distance_like(int n, defprobe::Rng& rng) {
    defprobe::Matrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = defprobe::uniform_real01(rng);
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

inline std::vector<double> ranks_of(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const auto rx = ranks_of(x);
    const auto ry = ranks_of(y);
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace testutil
