#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "defprobe/gp.hpp"
#include "helpers.hpp"

using namespace defprobe;

namespace {

// Three permutations all at Hamming distance 2/4 from the identity:
// constant targets, which fit_gp must reject.
SolutionSet constant_target_set() {
    return SolutionSet({Permutation({2, 1, 3, 4}), Permutation({1, 2, 4, 3}),
                        Permutation({3, 2, 1, 4})});
}

}  // namespace

TEST_CASE("dataset targets") {
    const SolutionSet x({Permutation({4, 3, 2, 1}), Permutation({1, 2, 3, 4})});
    const auto y = dataset_targets(Measure::Hamming, x);
    REQUIRE(y.size() == 2);
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 0.0);

    Rng rng = make_rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [set, targets] = make_dataset(Measure::Levenshtein, 10, 6, rng);
        CHECK(set.size() == 10);
        for (double v : targets) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("fit on a CNSD measure succeeds with zero nugget and interpolates") {
    Rng rng = make_rng(7);
    const auto [x, y] = make_dataset(Measure::Hamming, 12, 6, rng);
    const GpFit fit = fit_gp(x, y, Measure::Hamming);
    REQUIRE(fit.status == FitStatus::Ok);
    CHECK(fit.model.theta > 0.0);
    CHECK(std::isfinite(fit.model.theta));
    CHECK(fit.model.nugget == 0.0);

    double max_err = 0.0;
    for (int i = 0; i < x.size(); ++i)
        max_err = std::max(max_err, std::abs(predict(fit.model, x[i]) - y[static_cast<std::size_t>(i)]));
    CHECK(max_err <= 1e-6);
}

TEST_CASE("fit rejects degenerate inputs") {
    const SolutionSet x = constant_target_set();
    const auto y = dataset_targets(Measure::Hamming, x);
    CHECK(y[0] == y[1]);
    CHECK(y[1] == y[2]);
    CHECK_THROWS_AS(fit_gp(x, y, Measure::Hamming), std::invalid_argument);

    const SolutionSet tiny({Permutation({1, 2}), Permutation({2, 1})});
    CHECK_THROWS_AS(fit_gp(tiny, {0.0, 1.0}, Measure::Hamming), std::invalid_argument);
}

TEST_CASE("nugget ladder engages on an indefinite training set") {
    // Levenshtein fixture set: its distance matrix is not CNSD, so for small
    // theta the kernel matrix picks up a negative eigenvalue of order
    // theta * lambda, beyond what the ladder can lift.
    const SolutionSet x({Permutation({1, 2, 4, 3}), Permutation({2, 3, 1, 4}),
                         Permutation({2, 4, 3, 1}), Permutation({3, 1, 2, 4}),
                         Permutation({3, 4, 2, 1})});
    const std::vector<double> y{0.1, 0.3, 0.5, 0.7, 0.9};

    const auto small = make_gp_model(x, y, Measure::Levenshtein, 1e-2);
    CHECK((!small.has_value() || small->nugget > 0.0));
    // Large theta always factorizes (K ~ I) without any lift.
    const auto big = make_gp_model(x, y, Measure::Levenshtein, 1e3);
    REQUIRE(big.has_value());
    CHECK(big->nugget == 0.0);
    // The full fit succeeds by moving theta away from the rejected region.
    const GpFit fit = fit_gp(x, y, Measure::Levenshtein);
    CHECK(fit.status == FitStatus::Ok);
}

TEST_CASE("simple kriging with one training point predicts the mean everywhere") {
    const SolutionSet x({Permutation({2, 1, 3})});
    const std::vector<double> y{0.6};
    for (double theta : {1e-3, 1.0, 1e3}) {
        const auto model = make_gp_model(x, y, Measure::Hamming, theta);
        REQUIRE(model.has_value());
        CHECK(model->mu_hat == doctest::Approx(0.6).epsilon(1e-12));
        Rng rng = make_rng(11);
        for (int trial = 0; trial < 20; ++trial)
            CHECK(predict(*model, random_permutation(3, rng)) == doctest::Approx(0.6).epsilon(1e-9));
    }
}

TEST_CASE("large theta pushes predictions to the process mean away from training points") {
    Rng rng = make_rng(13);
    const auto [x, y] = make_dataset(Measure::Hamming, 8, 6, rng);
    const auto model = make_gp_model(x, y, Measure::Hamming, 1e3);
    REQUIRE(model.has_value());
    // A point far from every training sample reverts to mu.
    Permutation probe = random_permutation(6, rng);
    while (std::count(x.members().begin(), x.members().end(), probe) > 0)
        probe = random_permutation(6, rng);
    CHECK(predict(*model, probe) == doctest::Approx(model->mu_hat).epsilon(1e-6));
}

TEST_CASE("profiled mean maximizes the likelihood") {
    Rng rng = make_rng(17);
    const auto [x, y] = make_dataset(Measure::Manhattan, 10, 5, rng);
    const GpFit fit = fit_gp(x, y, Measure::Manhattan, 200);
    REQUIRE(fit.status == FitStatus::Ok);
    const GpModel& model = fit.model;
    const int n = x.size();

    // Full log-likelihood as a function of mu with sigma^2 re-profiled.
    auto loglik_at = [&](double mu) {
        std::vector<double> centered(model.y);
        for (auto& v : centered) v -= mu;
        const auto alpha = cholesky_solve(model.chol, centered);
        double q = 0.0;
        for (int i = 0; i < n; ++i) q += centered[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(i)];
        const double sigma2 = q / n;
        double logdet = 0.0;
        for (int i = 0; i < n; ++i) logdet += std::log(model.chol(i, i));
        return -0.5 * (n * std::log(sigma2) + 2.0 * logdet);
    };
    const double at_hat = loglik_at(model.mu_hat);
    for (double delta : {1e-3, 1e-2, 1e-1}) {
        CHECK(at_hat >= loglik_at(model.mu_hat + delta));
        CHECK(at_hat >= loglik_at(model.mu_hat - delta));
    }
}

TEST_CASE("indefinite measures push theta above the CNSD baseline") {
    // Paired runs on identical seeds; only the direction is asserted.
    double sum_log_theta_indef = 0.0, sum_log_theta_cnsd = 0.0;
    int used = 0;
    for (int run = 0; run < 20; ++run) {
        const std::uint64_t seed = substream_seed(8888, static_cast<std::uint64_t>(run));
        Rng rng_a = make_rng(seed);
        Rng rng_b = make_rng(seed);
        const auto [xa, ya] = make_dataset(Measure::Levenshtein, 12, 5, rng_a);
        const auto [xb, yb] = make_dataset(Measure::Hamming, 12, 5, rng_b);
        const GpFit fa = fit_gp(xa, ya, Measure::Levenshtein, 300);
        const GpFit fb = fit_gp(xb, yb, Measure::Hamming, 300);
        if (fa.status != FitStatus::Ok || fb.status != FitStatus::Ok) continue;
        sum_log_theta_indef += std::log10(fa.model.theta);
        sum_log_theta_cnsd += std::log10(fb.model.theta);
        ++used;
    }
    REQUIRE(used >= 15);
    CHECK(sum_log_theta_indef / used > sum_log_theta_cnsd / used);
}

TEST_CASE("rmse experiment on euclidean never sees indefiniteness") {
    for (int run = 0; run < 5; ++run) {
        const RmseRun r = rmse_experiment(Measure::Euclidean, 10, 5, 200,
                                          substream_seed(4242, static_cast<std::uint64_t>(run)));
        CHECK(r.lambda_n <= kDefaultEpsilon);
        CHECK(r.status == FitStatus::Ok);
    }
}

TEST_CASE("rmse experiment on chebyshev sees positive lambda somewhere") {
    bool positive = false;
    for (int run = 0; run < 12 && !positive; ++run) {
        const RmseRun r = rmse_experiment(Measure::Chebyshev, 15, 5, 100,
                                          substream_seed(977, static_cast<std::uint64_t>(run)));
        positive = r.lambda_n > kDefaultEpsilon;
    }
    CHECK(positive);
}

TEST_CASE("degenerate datasets are recorded as failed runs, not thrown") {
    Rng rng = make_rng(19);
    const RmseRun r = rmse_experiment_on(constant_target_set(), Measure::Hamming, 50, rng);
    CHECK(r.status == FitStatus::Failed);
    CHECK(r.lambda_n <= kDefaultEpsilon);  // lambda is still reported
}

TEST_CASE("rmse on an exhaustive m=4 grid is finite and small for a CNSD fit") {
    Rng rng = make_rng(23);
    const auto [x, y] = make_dataset(Measure::Hamming, 12, 4, rng);
    const RmseRun r = rmse_experiment_on(x, Measure::Hamming, 500, rng);
    REQUIRE(r.status == FitStatus::Ok);
    CHECK(std::isfinite(r.rmse));
    CHECK(r.rmse < 1.0);
}

TEST_CASE("campaign is deterministic and matches its serial reference") {
    GpCampaignConfig cfg;
    cfg.measures = {Measure::Insert, Measure::Hamming};
    cfg.ns = {8};
    cfg.ms = {5};
    cfg.runs_per_cell = 2;
    cfg.test_size = 50;
    cfg.seed = 2718;
    const auto serial = rmse_campaign(cfg, Exec::Serial);
    const auto parallel = rmse_campaign(cfg, Exec::Parallel);
    REQUIRE(serial.size() == 4);
    REQUIRE(parallel.size() == 4);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].seed == parallel[i].seed);
        CHECK(serial[i].lambda_n == parallel[i].lambda_n);
        CHECK(serial[i].theta == parallel[i].theta);
        CHECK(serial[i].rmse == parallel[i].rmse);
    }
}
