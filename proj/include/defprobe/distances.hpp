#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "defprobe/matrix.hpp"
#include "defprobe/permutation.hpp"

namespace defprobe {

// The sixteen permutation distance measures. All are normalized onto [0, 1]
// by a fixed per-measure maximum (see normalizer()).
enum class Measure {
    Levenshtein,    // lev   minimal deletions/insertions/substitutions
    Swap,           // swa   Kendall's tau: discordant position pairs
    Interchange,    // int   Cayley: minimal arbitrary transpositions
    Insert,         // ins   m - longest common subsequence (Ulam)
    LcStr,          // lcstr m - longest common substring
    R,              // r     uni-directional adjacency
    Adjacency,      // adj   bi-directional adjacency
    Position,       // pos   Spearman's footrule
    PositionSq,     // posq  Spearman's rank correlation (squared footrule)
    Hamming,        // ham   unequal positions
    Euclidean,      // euc
    Manhattan,      // man
    Chebyshev,      // che
    Lee,            // lee   sum of min(|d|, m - |d|)
    Cosine,         // cos   1 - cosine similarity
    Lexicographic,  // lex   |L(a) - L(b)| over lexicographic ranks
};

enum class MetricClass { Metric, PseudoMetric, NonMetric };

inline constexpr int kMeasureCount = 16;
std::span<const Measure> all_measures();

// Stable lowercase ids used in CLI flags and report files.
std::string_view measure_id(Measure measure);
Measure measure_from_id(std::string_view id);  // throws std::invalid_argument
MetricClass metric_class(Measure measure);

// Largest raw value attainable between length-m permutations; the divisor
// mapping raw distances onto [0, 1]. Cosine is already bounded and returns 1.
// Throws std::invalid_argument when m is too small for the measure.
double normalizer(Measure measure, int m);

double raw_distance(Measure measure, const Permutation& a, const Permutation& b);
double distance(Measure measure, const Permutation& a, const Permutation& b);

// Pairwise matrix over an ordered collection; symmetric, zero diagonal.
// Duplicates are accepted here (repair happens upstream). n >= 2.
Matrix distance_matrix(Measure measure, std::span<const Permutation> set);

// String distances used by the minimal-example fixtures. OSA (restricted
// Damerau-Levenshtein) reports the raw edit count; Jaro-Winkler is in [0, 1].
// The fixture values pin prefix_scale = 0, i.e. the plain Jaro distance.
enum class StringMeasure { Osa, JaroWinkler };

double string_distance(StringMeasure measure, std::string_view a, std::string_view b);
int osa_distance(std::string_view a, std::string_view b);
double jaro_winkler_distance(std::string_view a, std::string_view b, double prefix_scale = 0.0);

}  // namespace defprobe
