#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "defprobe/sampler.hpp"

namespace defprobe {

// Edit operation applied to a single permutation inside a set during EA
// mutation.
enum class SubMutation { Swap, Interchange, Reversal };

std::string_view submutation_id(SubMutation op);
SubMutation submutation_from_id(std::string_view id);

struct EaConfig {
    int population_size = 100;        // r
    long long budget = 10000;         // fitness evaluations
    double recombination_rate = 0.5;
    double mutation_rate = 0.0;       // <= 0 means the default 1/m
    SubMutation submutation = SubMutation::Swap;
    double epsilon = kDefaultEpsilon;
    std::uint64_t seed = 0;
    // Prepended to the random initial population (clipped to r members);
    // mostly a testing hook.
    std::vector<SolutionSet> initial_members;
};

struct EaResult {
    bool found = false;
    long long evaluations_used = 0;
    double best_lambda = -std::numeric_limits<double>::infinity();
    std::optional<SolutionSet> witness;
    std::vector<double> history;  // best lambda after each generation; [0] is the initial population
};

// Objective: the critical eigenvalue of the reduced matrix built from the
// set's distance matrix. Identical to cnsd_check's lambda_max.
double fitness(const SolutionSet& x, Measure measure);

// Submutation primitives. Positions are 1-based; each returns a fresh
// permutation and leaves the argument untouched.
Permutation apply_swap(const Permutation& pi, int a);                 // swaps positions a, a+1
Permutation apply_interchange(const Permutation& pi, int a, int b);   // arbitrary transposition
Permutation apply_reversal(const Permutation& pi, int a, int b);      // reverses pi_a..pi_b inclusive

// One random application of the operator (positions drawn so the result
// always differs from the input).
Permutation submutate(const Permutation& pi, SubMutation op, Rng& rng);

// Each member is selected with probability mutation_rate; when none is
// selected one uniformly chosen member is mutated anyway. Selected members
// receive one submutation; duplicates are repaired afterwards.
SolutionSet mutate(const SolutionSet& x, SubMutation op, double mutation_rate, Rng& rng);

// k members sampled without replacement from x1 and n-k from x2, k uniform
// on 1..n-1; duplicates repaired.
SolutionSet recombine(const SolutionSet& x1, const SolutionSet& x2, Rng& rng);

// Replaces duplicate members (beyond the first occurrence, which stays in
// place) with fresh unique random permutations. Requires n <= m!.
SolutionSet repair(std::vector<Permutation> members, Rng& rng);

// Generational EA over solution sets maximizing fitness(). Stops at the
// first evaluation with lambda > epsilon or when the budget is exhausted;
// any witness is re-verified through cnsd_check before returning.
EaResult ea_probe(Measure measure, int n, int m, const EaConfig& cfg,
                  Exec exec = Exec::Parallel);

}  // namespace defprobe
