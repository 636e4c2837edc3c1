#include "defprobe/distances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "defprobe/errors.hpp"

namespace defprobe {

namespace {

struct MeasureInfo {
    Measure measure;
    std::string_view id;
    MetricClass metric;
};

constexpr std::array<MeasureInfo, kMeasureCount> kMeasures{{
    {Measure::Levenshtein, "lev", MetricClass::Metric},
    {Measure::Swap, "swa", MetricClass::Metric},
    {Measure::Interchange, "int", MetricClass::Metric},
    {Measure::Insert, "ins", MetricClass::Metric},
    {Measure::LcStr, "lcstr", MetricClass::Metric},
    {Measure::R, "r", MetricClass::Metric},
    {Measure::Adjacency, "adj", MetricClass::PseudoMetric},
    {Measure::Position, "pos", MetricClass::Metric},
    {Measure::PositionSq, "posq", MetricClass::NonMetric},
    {Measure::Hamming, "ham", MetricClass::Metric},
    {Measure::Euclidean, "euc", MetricClass::Metric},
    {Measure::Manhattan, "man", MetricClass::Metric},
    {Measure::Chebyshev, "che", MetricClass::Metric},
    {Measure::Lee, "lee", MetricClass::Metric},
    {Measure::Cosine, "cos", MetricClass::NonMetric},
    {Measure::Lexicographic, "lex", MetricClass::Metric},
}};

const MeasureInfo& info(Measure m) {
    return kMeasures[static_cast<std::size_t>(m)];
}

// --- raw distance kernels -------------------------------------------------

int levenshtein_raw(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<int> dp(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) dp[static_cast<std::size_t>(j)] = j;
    for (int i = 1; i <= m; ++i) {
        int prev = dp[0];
        dp[0] = i;
        for (int j = 1; j <= m; ++j) {
            const int cur = dp[static_cast<std::size_t>(j)];
            const int sub = prev + (a[static_cast<std::size_t>(i - 1)] != b[static_cast<std::size_t>(j - 1)]);
            dp[static_cast<std::size_t>(j)] =
                std::min({cur + 1, dp[static_cast<std::size_t>(j - 1)] + 1, sub});
            prev = cur;
        }
    }
    return dp[static_cast<std::size_t>(m)];
}

// Discordant position pairs (Kendall's tau).
int swap_raw(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    int count = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const bool ai = a[static_cast<std::size_t>(i)] < a[static_cast<std::size_t>(j)];
            const bool bi = b[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(j)];
            count += ai != bi;
        }
    return count;
}

// Cayley: m minus the cycle count of the relabeling tau with tau[a_i] = b_i.
int interchange_raw(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<int> tau(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i < m; ++i)
        tau[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] = b[static_cast<std::size_t>(i)];
    std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
    int cycles = 0;
    for (int v = 1; v <= m; ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        ++cycles;
        for (int w = v; !seen[static_cast<std::size_t>(w)]; w = tau[static_cast<std::size_t>(w)])
            seen[static_cast<std::size_t>(w)] = 1;
    }
    return m - cycles;
}

// Longest common subsequence of two permutations via longest increasing
// subsequence of b relabeled by positions in a (patience sorting).
int lcseq_length(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<int> pos(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i < m; ++i)
        pos[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] = i;
    std::vector<int> tails;
    tails.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const int x = pos[static_cast<std::size_t>(b[static_cast<std::size_t>(j)])];
        auto it = std::lower_bound(tails.begin(), tails.end(), x);
        if (it == tails.end())
            tails.push_back(x);
        else
            *it = x;
    }
    return static_cast<int>(tails.size());
}

int lcstr_length(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    // One DP row; dp[j] = common suffix length ending at (i, j).
    std::vector<int> dp(static_cast<std::size_t>(m) + 1, 0);
    int best = 0;
    for (int i = 1; i <= m; ++i) {
        for (int j = m; j >= 1; --j) {
            if (a[static_cast<std::size_t>(i - 1)] == b[static_cast<std::size_t>(j - 1)]) {
                dp[static_cast<std::size_t>(j)] = dp[static_cast<std::size_t>(j - 1)] + 1;
                best = std::max(best, dp[static_cast<std::size_t>(j)]);
            } else {
                dp[static_cast<std::size_t>(j)] = 0;
            }
        }
    }
    return best;
}

// Ordered adjacent pairs of a that do not appear in b.
int r_raw(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<int> next_b(static_cast<std::size_t>(m) + 1, 0);  // 0 = no successor
    for (int j = 0; j + 1 < m; ++j)
        next_b[static_cast<std::size_t>(b[static_cast<std::size_t>(j)])] = b[static_cast<std::size_t>(j + 1)];
    int count = 0;
    for (int i = 0; i + 1 < m; ++i)
        count += next_b[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] !=
                 a[static_cast<std::size_t>(i + 1)];
    return count;
}

// Unordered neighbor pairs of a that are not neighbors in b.
int adjacency_raw(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<int> next_b(static_cast<std::size_t>(m) + 1, 0), prev_b(static_cast<std::size_t>(m) + 1, 0);
    for (int j = 0; j + 1 < m; ++j) {
        next_b[static_cast<std::size_t>(b[static_cast<std::size_t>(j)])] = b[static_cast<std::size_t>(j + 1)];
        prev_b[static_cast<std::size_t>(b[static_cast<std::size_t>(j + 1)])] = b[static_cast<std::size_t>(j)];
    }
    int count = 0;
    for (int i = 0; i + 1 < m; ++i) {
        const int u = a[static_cast<std::size_t>(i)];
        const int v = a[static_cast<std::size_t>(i + 1)];
        count += next_b[static_cast<std::size_t>(u)] != v && prev_b[static_cast<std::size_t>(u)] != v;
    }
    return count;
}

long long position_raw(const std::vector<int>& a, const std::vector<int>& b, bool squared) {
    const int m = static_cast<int>(a.size());
    std::vector<int> pos_a(static_cast<std::size_t>(m) + 1), pos_b(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i < m; ++i) {
        pos_a[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] = i;
        pos_b[static_cast<std::size_t>(b[static_cast<std::size_t>(i)])] = i;
    }
    long long total = 0;
    for (int v = 1; v <= m; ++v) {
        const long long diff = pos_a[static_cast<std::size_t>(v)] - pos_b[static_cast<std::size_t>(v)];
        total += squared ? diff * diff : std::llabs(diff);
    }
    return total;
}

int hamming_raw(const std::vector<int>& a, const std::vector<int>& b) {
    int count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) count += a[i] != b[i];
    return count;
}

long long sq_euclidean_raw(const std::vector<int>& a, const std::vector<int>& b) {
    long long total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long long d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

long long manhattan_raw(const std::vector<int>& a, const std::vector<int>& b) {
    long long total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::llabs(static_cast<long long>(a[i]) - b[i]);
    return total;
}

int chebyshev_raw(const std::vector<int>& a, const std::vector<int>& b) {
    int best = 0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

long long lee_raw(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    long long total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int d = std::abs(a[i] - b[i]);
        total += std::min(d, m - d);
    }
    return total;
}

double cosine_raw(const std::vector<int>& a, const std::vector<int>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    // na == nb == an integer for permutations of the same m, so sqrt(na*nb)
    // is exact and d(a, a) comes out as exactly zero.
    const double v = 1.0 - dot / std::sqrt(na * nb);
    return std::max(v, 0.0);
}

double lexicographic_raw(const Permutation& a, const Permutation& b) {
    const std::uint64_t ra = lexicographic_rank(a);
    const std::uint64_t rb = lexicographic_rank(b);
    return static_cast<double>(ra > rb ? ra - rb : rb - ra);
}

}  // namespace

std::span<const Measure> all_measures() {
    static const std::array<Measure, kMeasureCount> all = [] {
        std::array<Measure, kMeasureCount> a{};
        for (std::size_t i = 0; i < kMeasures.size(); ++i) a[i] = kMeasures[i].measure;
        return a;
    }();
    return all;
}

std::string_view measure_id(Measure measure) { return info(measure).id; }

Measure measure_from_id(std::string_view id) {
    for (const auto& mi : kMeasures)
        if (mi.id == id) return mi.measure;
    throw std::invalid_argument("unknown measure id: " + std::string(id));
}

MetricClass metric_class(Measure measure) { return info(measure).metric; }

double normalizer(Measure measure, int m) {
    if (m < 1) throw std::invalid_argument("permutation length must be >= 1");
    const double md = m;
    double norm = 0.0;
    switch (measure) {
        case Measure::Levenshtein: norm = md; break;
        case Measure::Swap: norm = md * (md - 1.0) / 2.0; break;
        case Measure::Interchange:
        case Measure::Insert:
        case Measure::LcStr:
        case Measure::R:
        case Measure::Adjacency:
        case Measure::Chebyshev: norm = md - 1.0; break;
        case Measure::Position:
        case Measure::Manhattan: norm = static_cast<double>((static_cast<long long>(m) * m) / 2); break;
        case Measure::PositionSq: norm = (md * md * md - md) / 3.0; break;
        case Measure::Hamming: norm = md; break;
        case Measure::Euclidean: norm = std::sqrt((md * md * md - md) / 3.0); break;
        case Measure::Lee: norm = md * static_cast<double>(m / 2); break;
        case Measure::Cosine: norm = 1.0; break;
        case Measure::Lexicographic: norm = static_cast<double>(factorial(m) - 1); break;
    }
    if (!(norm > 0.0)) {
        throw std::invalid_argument("m = " + std::to_string(m) + " too small for measure " +
                                    std::string(measure_id(measure)));
    }
    return norm;
}

double raw_distance(Measure measure, const Permutation& a, const Permutation& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("permutation lengths differ");
    const auto& ea = a.elements();
    const auto& eb = b.elements();
    const int m = a.size();
    switch (measure) {
        case Measure::Levenshtein: return levenshtein_raw(ea, eb);
        case Measure::Swap: return swap_raw(ea, eb);
        case Measure::Interchange: return interchange_raw(ea, eb);
        case Measure::Insert: return m - lcseq_length(ea, eb);
        case Measure::LcStr: return m - lcstr_length(ea, eb);
        case Measure::R: return r_raw(ea, eb);
        case Measure::Adjacency: return adjacency_raw(ea, eb);
        case Measure::Position: return static_cast<double>(position_raw(ea, eb, false));
        case Measure::PositionSq: return static_cast<double>(position_raw(ea, eb, true));
        case Measure::Hamming: return hamming_raw(ea, eb);
        case Measure::Euclidean: return std::sqrt(static_cast<double>(sq_euclidean_raw(ea, eb)));
        case Measure::Manhattan: return static_cast<double>(manhattan_raw(ea, eb));
        case Measure::Chebyshev: return chebyshev_raw(ea, eb);
        case Measure::Lee: return static_cast<double>(lee_raw(ea, eb));
        case Measure::Cosine: return cosine_raw(ea, eb);
        case Measure::Lexicographic: return lexicographic_raw(a, b);
    }
    throw std::invalid_argument("unknown measure");
}

double distance(Measure measure, const Permutation& a, const Permutation& b) {
    const double norm = normalizer(measure, a.size());
    return raw_distance(measure, a, b) / norm;
}

Matrix distance_matrix(Measure measure, std::span<const Permutation> set) {
    const int n = static_cast<int>(set.size());
    if (n < 2) throw std::invalid_argument("distance matrix needs at least two points");
    const int m = set[0].size();
    for (const auto& p : set)
        if (p.size() != m) throw std::invalid_argument("permutation lengths differ within set");
    const double norm = normalizer(measure, m);
    Matrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = raw_distance(measure, set[static_cast<std::size_t>(i)],
                                          set[static_cast<std::size_t>(j)]) / norm;
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

// --- string distances -------------------------------------------------------

int osa_distance(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty string");
    const int la = static_cast<int>(a.size());
    const int lb = static_cast<int>(b.size());
    // Full table: the transposition case reaches two rows back.
    std::vector<std::vector<int>> d(static_cast<std::size_t>(la) + 1,
                                    std::vector<int>(static_cast<std::size_t>(lb) + 1, 0));
    for (int i = 0; i <= la; ++i) d[static_cast<std::size_t>(i)][0] = i;
    for (int j = 0; j <= lb; ++j) d[0][static_cast<std::size_t>(j)] = j;
    for (int i = 1; i <= la; ++i) {
        for (int j = 1; j <= lb; ++j) {
            const int cost = a[static_cast<std::size_t>(i - 1)] != b[static_cast<std::size_t>(j - 1)];
            int best = std::min({d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + 1,
                                 d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] + 1,
                                 d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] + cost});
            if (i > 1 && j > 1 && a[static_cast<std::size_t>(i - 1)] == b[static_cast<std::size_t>(j - 2)] &&
                a[static_cast<std::size_t>(i - 2)] == b[static_cast<std::size_t>(j - 1)]) {
                best = std::min(best, d[static_cast<std::size_t>(i - 2)][static_cast<std::size_t>(j - 2)] + 1);
            }
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = best;
        }
    }
    return d[static_cast<std::size_t>(la)][static_cast<std::size_t>(lb)];
}

double jaro_winkler_distance(std::string_view a, std::string_view b, double prefix_scale) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty string");
    if (prefix_scale < 0.0 || prefix_scale > 0.25)
        throw std::invalid_argument("prefix scale must lie in [0, 0.25]");
    if (a == b) return 0.0;
    const int la = static_cast<int>(a.size());
    const int lb = static_cast<int>(b.size());
    const int window = std::max(std::max(la, lb) / 2 - 1, 0);

    std::vector<char> ma(static_cast<std::size_t>(la), 0), mb(static_cast<std::size_t>(lb), 0);
    int matches = 0;
    for (int i = 0; i < la; ++i) {
        const int lo = std::max(0, i - window);
        const int hi = std::min(lb - 1, i + window);
        for (int j = lo; j <= hi; ++j) {
            if (!mb[static_cast<std::size_t>(j)] && a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]) {
                ma[static_cast<std::size_t>(i)] = mb[static_cast<std::size_t>(j)] = 1;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 1.0;

    int transpositions = 0;
    for (int i = 0, j = 0; i < la; ++i) {
        if (!ma[static_cast<std::size_t>(i)]) continue;
        while (!mb[static_cast<std::size_t>(j)]) ++j;
        transpositions += a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(j)];
        ++j;
    }
    transpositions /= 2;

    const double md = matches;
    double sim = (md / la + md / lb + (md - transpositions) / md) / 3.0;
    if (prefix_scale > 0.0) {
        int prefix = 0;
        const int cap = std::min({la, lb, 4});
        while (prefix < cap && a[static_cast<std::size_t>(prefix)] == b[static_cast<std::size_t>(prefix)])
            ++prefix;
        sim += prefix * prefix_scale * (1.0 - sim);
    }
    return 1.0 - sim;
}

double string_distance(StringMeasure measure, std::string_view a, std::string_view b) {
    switch (measure) {
        case StringMeasure::Osa: return osa_distance(a, b);
        case StringMeasure::JaroWinkler: return jaro_winkler_distance(a, b);
    }
    throw std::invalid_argument("unknown string measure");
}

}  // namespace defprobe
