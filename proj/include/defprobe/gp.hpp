#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defprobe/sampler.hpp"

namespace defprobe {

// Gaussian process regression with the exponential distance kernel
// k(x, x') = exp(-theta d(x, x')), constant mean, scalar theta fitted by
// maximum likelihood over the concentrated objective.
struct GpModel {
    SolutionSet train;
    std::vector<double> y;
    Measure measure = Measure::Hamming;
    double theta = 1.0;
    double mu_hat = 0.0;
    double sigma2_hat = 0.0;
    double nugget = 0.0;          // final diagonal lift, 0 when K was SPD as-is
    Matrix chol;                  // lower factor of K + nugget I
    std::vector<double> alpha;    // (K + nugget I)^{-1} (y - mu 1)
};

enum class FitStatus { Ok, Failed };

struct GpFit {
    FitStatus status = FitStatus::Failed;
    GpModel model;
    std::string diagnostics;
};

// theta is searched over log10(theta) in [-3, 3]; distances live in [0, 1],
// so this spans essentially-constant to essentially-unit kernel matrices.
inline constexpr double kLogThetaMin = -3.0;
inline constexpr double kLogThetaMax = 3.0;

// Nugget ladder: 0, then 1e-10 escalating tenfold up to 1e-4.
inline constexpr double kNuggetFloor = 1e-10;
inline constexpr double kNuggetCeiling = 1e-4;

// y_i = d(x_i, x_ref) with x_ref the identity permutation.
std::vector<double> dataset_targets(Measure measure, const SolutionSet& x);
std::pair<SolutionSet, std::vector<double>> make_dataset(Measure measure, int n, int m, Rng& rng);

// Model at a fixed theta, nugget ladder applied; nullopt when no ladder
// entry yields an SPD kernel matrix.
std::optional<GpModel> make_gp_model(const SolutionSet& x, const std::vector<double>& y,
                                     Measure measure, double theta);

// Concentrated log-likelihood of the model (mean and variance profiled out).
double concentrated_log_likelihood(const GpModel& model);

// Dense log-grid search over theta with `likelihood_budget` evaluations;
// candidates whose kernel matrix fails the whole nugget ladder score -inf.
// Requires n >= 3 and non-constant y (std::invalid_argument otherwise); a
// Failed fit (every candidate rejected) is reported, not thrown.
GpFit fit_gp(const SolutionSet& x, const std::vector<double>& y, Measure measure,
             int likelihood_budget = 1000);

// yhat(x) = mu + psi^T alpha with psi_i = exp(-theta d(x, x_i)).
double predict(const GpModel& model, const Permutation& x);

struct RmseRun {
    Measure measure = Measure::Hamming;
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    double lambda_n = 0.0;  // critical eigenvalue of the training distance matrix
    double theta = 0.0;
    double nugget = 0.0;
    double rmse = 0.0;
    FitStatus status = FitStatus::Failed;
};

// Random dataset, ML fit, RMSE over test_size random permutations sampled
// outside the training set (repeats among test points allowed; small m has
// fewer than test_size distinct permutations). Fit problems are recorded in
// the run, never thrown.
RmseRun rmse_experiment(Measure measure, int n, int m, int test_size, std::uint64_t seed);

// Same, on a caller-supplied training set (testing hook).
RmseRun rmse_experiment_on(const SolutionSet& x, Measure measure, int test_size, Rng& rng);

struct GpCampaignConfig {
    std::vector<Measure> measures;
    std::vector<int> ns;
    std::vector<int> ms;
    int runs_per_cell = 1;
    int test_size = 1000;
    std::uint64_t seed = 0;
};

// One run per (cell, repeat), seeded by substream(seed, cell, run).
std::vector<RmseRun> rmse_campaign(const GpCampaignConfig& cfg, Exec exec = Exec::Parallel);

}  // namespace defprobe
