#pragma once

#include <cstdint>
#include <vector>

#include "defprobe/definiteness.hpp"
#include "defprobe/permutation.hpp"
#include "defprobe/sampler.hpp"

namespace defprobe {

// Independent brute-force check of conditional definiteness straight from
// the defining quadratic form, used to validate the eigenvalue route.
struct OracleVerdict {
    enum class Method { QuadraticForm, ExhaustiveSubsets };
    Method method = Method::QuadraticForm;
    bool cnsd = true;
    std::vector<double> evidence;  // coefficient vector c: sum zero, unit norm
    double value = 0.0;            // c^T D c at the evidence
};

// Samples `trials` random unit vectors with zero component sum
// (center-then-normalize Gaussians) and evaluates c^T D c; then runs 50
// projected-gradient-ascent steps (step 0.1/||D||_F) from the best sample.
// A NotCnsd verdict is sound; a Cnsd verdict may be a false negative.
OracleVerdict quadratic_form_cnsd(const Matrix& d, long long trials = 100000,
                                  double epsilon = kDefaultEpsilon,
                                  std::uint64_t seed = 0, Exec exec = Exec::Parallel);

// Exhaustive references for the subsequence-based measures (enumerate every
// subsequence / substring). Exponential; test support for small m only.
int exhaustive_lcseq_length(const Permutation& a, const Permutation& b);
int exhaustive_lcstr_length(const Permutation& a, const Permutation& b);

}  // namespace defprobe
