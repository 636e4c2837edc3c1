#include "defprobe/gp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <omp.h>

namespace defprobe {

namespace {

Matrix kernel_from_distances(const Matrix& d, double theta, double nugget) {
    const int n = d.order();
    Matrix k(n);
    for (int i = 0; i < n; ++i) {
        k(i, i) = 1.0 + nugget;
        for (int j = i + 1; j < n; ++j) {
            const double v = std::exp(-theta * d(i, j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

// Nugget ladder: no lift first, then 1e-10 escalating tenfold to 1e-4.
bool factorize_with_ladder(const Matrix& d, double theta, Matrix& chol, double& nugget_out) {
    for (double nugget = 0.0;;) {
        chol = kernel_from_distances(d, theta, nugget);
        if (cholesky_lower(chol)) {
            nugget_out = nugget;
            return true;
        }
        if (nugget == 0.0)
            nugget = kNuggetFloor;
        else if (nugget < kNuggetCeiling * 0.5)
            nugget *= 10.0;
        else
            return false;
    }
}

// Profiled mean and variance given the factorized kernel matrix.
void profile_mean_variance(const Matrix& chol, const std::vector<double>& y, double& mu,
                           double& sigma2, std::vector<double>& alpha) {
    const int n = chol.order();
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    const std::vector<double> kinv_y = cholesky_solve(chol, y);
    const std::vector<double> kinv_1 = cholesky_solve(chol, ones);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        num += kinv_y[static_cast<std::size_t>(i)];
        den += kinv_1[static_cast<std::size_t>(i)];
    }
    mu = num / den;
    std::vector<double> centered(y);
    for (auto& v : centered) v -= mu;
    alpha = cholesky_solve(chol, centered);
    double q = 0.0;
    for (int i = 0; i < n; ++i) q += centered[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(i)];
    sigma2 = std::max(q / n, 1e-300);
}

double log_det_from_chol(const Matrix& chol) {
    double s = 0.0;
    for (int i = 0; i < chol.order(); ++i) s += std::log(chol(i, i));
    return 2.0 * s;
}

}  // namespace

std::vector<double> dataset_targets(Measure measure, const SolutionSet& x) {
    const Permutation ref = Permutation::identity(x.element_length());
    std::vector<double> y;
    y.reserve(static_cast<std::size_t>(x.size()));
    for (const auto& p : x.members()) y.push_back(distance(measure, p, ref));
    return y;
}

std::pair<SolutionSet, std::vector<double>> make_dataset(Measure measure, int n, int m, Rng& rng) {
    SolutionSet x = random_solution_set(m, n, rng);
    std::vector<double> y = dataset_targets(measure, x);
    return {std::move(x), std::move(y)};
}

std::optional<GpModel> make_gp_model(const SolutionSet& x, const std::vector<double>& y,
                                     Measure measure, double theta) {
    if (x.size() != static_cast<int>(y.size()))
        throw std::invalid_argument("training set and observations differ in size");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");

    const Matrix d = x.size() >= 2 ? distance_matrix(measure, x) : Matrix(1);
    GpModel model;
    if (!factorize_with_ladder(d, theta, model.chol, model.nugget)) return std::nullopt;
    model.train = x;
    model.y = y;
    model.measure = measure;
    model.theta = theta;
    profile_mean_variance(model.chol, y, model.mu_hat, model.sigma2_hat, model.alpha);
    return model;
}

double concentrated_log_likelihood(const GpModel& model) {
    const int n = static_cast<int>(model.y.size());
    return -0.5 * (n * std::log(model.sigma2_hat) + log_det_from_chol(model.chol));
}

GpFit fit_gp(const SolutionSet& x, const std::vector<double>& y, Measure measure,
             int likelihood_budget) {
    if (x.size() < 3) throw std::invalid_argument("fit needs at least 3 training points");
    if (x.size() != static_cast<int>(y.size()))
        throw std::invalid_argument("training set and observations differ in size");
    if (likelihood_budget < 2) throw std::invalid_argument("likelihood budget too small");
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    if (*ymin == *ymax) throw std::invalid_argument("observations are constant");

    GpFit fit;
    double best_ll = -std::numeric_limits<double>::infinity();
    int rejected = 0;
    for (int i = 0; i < likelihood_budget; ++i) {
        const double log_theta = kLogThetaMin + (kLogThetaMax - kLogThetaMin) * i /
                                                     (likelihood_budget - 1);
        const double theta = std::pow(10.0, log_theta);
        auto model = make_gp_model(x, y, measure, theta);
        if (!model) {
            ++rejected;
            continue;
        }
        const double ll = concentrated_log_likelihood(*model);
        if (ll > best_ll) {
            best_ll = ll;
            fit.model = std::move(*model);
            fit.status = FitStatus::Ok;
        }
    }
    if (fit.status != FitStatus::Ok) {
        fit.diagnostics = "kernel matrix failed factorization for all " +
                          std::to_string(likelihood_budget) + " theta candidates (nugget up to 1e-4)";
    } else if (rejected > 0) {
        fit.diagnostics = std::to_string(rejected) + " theta candidates rejected";
    }
    return fit;
}

double predict(const GpModel& model, const Permutation& x) {
    if (model.y.empty() || model.chol.order() != static_cast<int>(model.y.size()))
        throw std::logic_error("predict called on an unfitted model");
    double yhat = model.mu_hat;
    for (int i = 0; i < model.train.size(); ++i) {
        const double psi = std::exp(-model.theta * distance(model.measure, x, model.train[i]));
        yhat += psi * model.alpha[static_cast<std::size_t>(i)];
    }
    return yhat;
}

RmseRun rmse_experiment_on(const SolutionSet& x, Measure measure, int test_size, Rng& rng) {
    if (static_cast<std::uint64_t>(x.size()) >= factorial_capped(x.element_length()))
        throw std::invalid_argument("training set exhausts the permutation space; no test points");
    RmseRun run;
    run.measure = measure;
    run.n = x.size();
    run.m = x.element_length();
    run.status = FitStatus::Failed;

    const Matrix d = distance_matrix(measure, x);
    run.lambda_n = cnsd_lambda_max(d);

    const std::vector<double> y = dataset_targets(measure, x);
    GpFit fit;
    try {
        fit = fit_gp(x, y, measure);
    } catch (const std::invalid_argument&) {
        return run;  // degenerate dataset (e.g. constant y): recorded, not thrown
    }
    if (fit.status != FitStatus::Ok) return run;

    run.theta = fit.model.theta;
    run.nugget = fit.model.nugget;

    // Test points are sampled outside the training set; repeats among them
    // are fine (small m has fewer than test_size distinct permutations).
    const std::set<Permutation> train_members(x.members().begin(), x.members().end());
    const Permutation ref = Permutation::identity(run.m);
    double sq_sum = 0.0;
    for (int i = 0; i < test_size; ++i) {
        Permutation p = random_permutation(run.m, rng);
        while (train_members.count(p) > 0) p = random_permutation(run.m, rng);
        const double err = predict(fit.model, p) - distance(measure, p, ref);
        sq_sum += err * err;
    }
    run.rmse = std::sqrt(sq_sum / test_size);
    run.status = FitStatus::Ok;
    return run;
}

RmseRun rmse_experiment(Measure measure, int n, int m, int test_size, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    SolutionSet x = random_solution_set(m, n, rng);
    RmseRun run = rmse_experiment_on(x, measure, test_size, rng);
    run.seed = seed;
    return run;
}

std::vector<RmseRun> rmse_campaign(const GpCampaignConfig& cfg, Exec exec) {
    if (cfg.measures.empty() || cfg.ns.empty() || cfg.ms.empty())
        throw std::invalid_argument("campaign grid is empty");
    if (cfg.runs_per_cell < 1) throw std::invalid_argument("runs_per_cell must be >= 1");

    struct Task {
        Measure measure;
        int n, m;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::uint64_t cell = 0;
    for (Measure measure : cfg.measures)
        for (int n : cfg.ns)
            for (int m : cfg.ms) {
                for (int run = 0; run < cfg.runs_per_cell; ++run)
                    tasks.push_back({measure, n, m,
                                     substream_seed(cfg.seed, cell, static_cast<std::uint64_t>(run))});
                ++cell;
            }

    std::vector<RmseRun> out(tasks.size());
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const Task& t = tasks[i];
            out[i] = rmse_experiment(t.measure, t.n, t.m, cfg.test_size, t.seed);
        }
        return out;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i) {
        const Task& t = tasks[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = rmse_experiment(t.measure, t.n, t.m, cfg.test_size, t.seed);
    }
    return out;
}

}  // namespace defprobe
