#include "defprobe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace defprobe {

namespace {

// Center (sum to zero) then normalize to the unit sphere; false when the
// vector collapses to zero after centering.
bool center_normalize(std::vector<double>& c) {
    const std::size_t n = c.size();
    double mean = 0.0;
    for (double v : c) mean += v;
    mean /= static_cast<double>(n);
    double norm2 = 0.0;
    for (auto& v : c) {
        v -= mean;
        norm2 += v * v;
    }
    if (norm2 <= 0.0) return false;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : c) v *= inv;
    return true;
}

double quadratic_form(const Matrix& d, const std::vector<double>& c) {
    const int n = d.order();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += d(i, j) * c[static_cast<std::size_t>(j)];
        total += c[static_cast<std::size_t>(i)] * row;
    }
    return total;
}

std::vector<double> sample_direction(int n, std::uint64_t seed, std::uint64_t trial) {
    Rng rng = make_rng(substream_seed(seed, trial));
    std::vector<double> c(static_cast<std::size_t>(n));
    for (;;) {
        for (auto& v : c) v = gaussian(rng);
        if (center_normalize(c)) return c;
    }
}

}  // namespace

OracleVerdict quadratic_form_cnsd(const Matrix& d, long long trials, double epsilon,
                                  std::uint64_t seed, Exec exec) {
    if (d.order() < 2) throw std::invalid_argument("distance matrix needs order >= 2");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const int n = d.order();

    // Best sampled direction; ties resolved toward the lowest trial index so
    // the parallel merge is schedule-independent.
    double best_value = -std::numeric_limits<double>::infinity();
    long long best_trial = 0;

    if (exec == Exec::Serial) {
        for (long long trial = 0; trial < trials; ++trial) {
            const double v = quadratic_form(d, sample_direction(n, seed, static_cast<std::uint64_t>(trial)));
            if (v > best_value) {
                best_value = v;
                best_trial = trial;
            }
        }
    } else {
        const int threads = omp_get_max_threads();
        std::vector<double> values(static_cast<std::size_t>(threads),
                                   -std::numeric_limits<double>::infinity());
        std::vector<long long> indices(static_cast<std::size_t>(threads), 0);
#pragma omp parallel
        {
            const int tid = omp_get_thread_num();
#pragma omp for schedule(static)
            for (long long trial = 0; trial < trials; ++trial) {
                const double v =
                    quadratic_form(d, sample_direction(n, seed, static_cast<std::uint64_t>(trial)));
                if (v > values[static_cast<std::size_t>(tid)] ||
                    (v == values[static_cast<std::size_t>(tid)] && trial < indices[static_cast<std::size_t>(tid)])) {
                    values[static_cast<std::size_t>(tid)] = v;
                    indices[static_cast<std::size_t>(tid)] = trial;
                }
            }
        }
        for (int tid = 0; tid < threads; ++tid) {
            if (values[static_cast<std::size_t>(tid)] > best_value ||
                (values[static_cast<std::size_t>(tid)] == best_value && indices[static_cast<std::size_t>(tid)] < best_trial)) {
                best_value = values[static_cast<std::size_t>(tid)];
                best_trial = indices[static_cast<std::size_t>(tid)];
            }
        }
    }

    std::vector<double> c = sample_direction(n, seed, static_cast<std::uint64_t>(best_trial));
    double value = quadratic_form(d, c);

    // Projected gradient ascent from the best sample to sharpen near-zero
    // maxima; gradient 2Dc, re-centered and renormalized each step.
    const double fro = frobenius_norm(d);
    if (fro > 0.0) {
        const double step = 0.1 / fro;
        std::vector<double> candidate(c);
        for (int iter = 0; iter < 50; ++iter) {
            std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i < n; ++i) {
                double row = 0.0;
                for (int j = 0; j < n; ++j) row += d(i, j) * candidate[static_cast<std::size_t>(j)];
                grad[static_cast<std::size_t>(i)] = 2.0 * row;
            }
            for (int i = 0; i < n; ++i) candidate[static_cast<std::size_t>(i)] += step * grad[static_cast<std::size_t>(i)];
            if (!center_normalize(candidate)) break;
            const double v = quadratic_form(d, candidate);
            if (v > value) {
                value = v;
                c = candidate;
            }
        }
    }

    OracleVerdict verdict;
    verdict.method = OracleVerdict::Method::QuadraticForm;
    verdict.cnsd = !(value > epsilon);
    verdict.evidence = std::move(c);
    verdict.value = value;
    return verdict;
}

namespace {

bool is_subsequence(const std::vector<int>& needle, const std::vector<int>& haystack) {
    std::size_t i = 0;
    for (int v : haystack) {
        if (i < needle.size() && needle[i] == v) ++i;
    }
    return i == needle.size();
}

}  // namespace

int exhaustive_lcseq_length(const Permutation& a, const Permutation& b) {
    const int m = a.size();
    if (b.size() != m) throw std::invalid_argument("permutation lengths differ");
    if (m > 20) throw std::invalid_argument("exhaustive search is exponential; keep m small");
    // Enumerate every subsequence of a (2^m masks) and test it against b.
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) sub.push_back(a[i]);
        if (static_cast<int>(sub.size()) > best && is_subsequence(sub, b.elements()))
            best = static_cast<int>(sub.size());
    }
    return best;
}

int exhaustive_lcstr_length(const Permutation& a, const Permutation& b) {
    const int m = a.size();
    if (b.size() != m) throw std::invalid_argument("permutation lengths differ");
    int best = 0;
    // Every window of a against every window of b.
    for (int i = 0; i < m; ++i)
        for (int len = 1; i + len <= m; ++len)
            for (int j = 0; j + len <= m; ++j) {
                bool equal = true;
                for (int k = 0; k < len && equal; ++k) equal = a[i + k] == b[j + k];
                if (equal) best = std::max(best, len);
            }
    return best;
}

}  // namespace defprobe
