#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "defprobe/definiteness.hpp"
#include "defprobe/distances.hpp"
#include "defprobe/permutation.hpp"
#include "defprobe/rng.hpp"

namespace defprobe {

// Campaign kernels come in two builds: an OpenMP one and a plain serial
// reference. Results are bit-identical (per-task PRNG substreams,
// associative merges); tests and the benchmark target compare them.
enum class Exec { Serial, Parallel };

// n pairwise-distinct permutations of equal length; one sampling draw, one
// EA individual.
class SolutionSet {
public:
    SolutionSet() = default;
    explicit SolutionSet(std::vector<Permutation> members);  // validates

    int size() const { return static_cast<int>(members_.size()); }
    int element_length() const { return members_.empty() ? 0 : members_.front().size(); }
    const Permutation& operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }
    const std::vector<Permutation>& members() const { return members_; }

    friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

private:
    std::vector<Permutation> members_;
};

Matrix distance_matrix(Measure measure, const SolutionSet& set);

// n distinct uniform permutations of 1..m; duplicates rejected and redrawn.
// Requires n <= m!.
SolutionSet random_solution_set(int m, int n, Rng& rng);

struct Witness {
    int repeat = 0;
    std::uint64_t set_index = 0;  // set index within the repeat, or combination rank
    double lambda = 0.0;
    SolutionSet set;
};

inline constexpr int kMaxWitnesses = 10;

struct RepeatStats {
    int repeat = 0;
    long long n_lambda_plus = 0;
    double p = 0.0;
    double lambda_max = -std::numeric_limits<double>::infinity();
};

struct SampleConfig {
    Measure measure = Measure::Insert;
    int n = 5;
    int m = 4;
    long long t = 10000;
    int repeats = 10;
    double epsilon = kDefaultEpsilon;
    std::uint64_t seed = 0;
};

struct ProbeReport {
    SampleConfig config;
    std::vector<RepeatStats> repeats;
    long long n_lambda_plus_total = 0;
    double mean_p = 0.0;
    double mean_lambda_max = 0.0;
    double lambda_max_overall = -std::numeric_limits<double>::infinity();
    std::vector<Witness> witnesses;  // first kMaxWitnesses flagged sets in (repeat, set) order
    std::optional<Witness> argmax;   // the set attaining lambda_max_overall
};

ProbeReport sample_probe(const SampleConfig& cfg, Exec exec = Exec::Parallel);
ProbeReport sample_probe_serial(const SampleConfig& cfg);  // reference implementation

// Enumeration guard for brute force: C(m!, n) must not exceed this.
inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

// C(m!, n) saturated at cap.
std::uint64_t solution_set_count(int m, int n, std::uint64_t cap = kBruteForceGuard + 1);

struct BruteForceReport {
    Measure measure = Measure::Insert;
    int n = 0;
    int m = 0;
    double epsilon = kDefaultEpsilon;
    std::uint64_t n_s = 0;
    std::uint64_t n_lambda_plus = 0;
    double p = 0.0;
    double lambda_max = -std::numeric_limits<double>::infinity();
    std::vector<Witness> witnesses;  // repeat = 0, set_index = combination rank
    std::optional<Witness> argmax;
};

// Exact p over every n-subset of the m! permutations, enumerated as
// combinations of zero-based lexicographic ranks. capability_error (with the
// computed n_s) when C(m!, n) exceeds kBruteForceGuard.
BruteForceReport brute_force_probe(Measure measure, int n, int m,
                                   double epsilon = kDefaultEpsilon,
                                   Exec exec = Exec::Parallel);
BruteForceReport brute_force_probe_serial(Measure measure, int n, int m,
                                          double epsilon = kDefaultEpsilon);

}  // namespace defprobe
