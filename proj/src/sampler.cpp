#include "defprobe/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "defprobe/combinatorics.hpp"
#include "defprobe/errors.hpp"

namespace defprobe {

namespace {

// Accumulator with an associative merge; workers keep one each, so thread
// count never changes a campaign's result.
struct CellAccumulator {
    long long count = 0;
    double lambda_max = -std::numeric_limits<double>::infinity();
    std::uint64_t argmax_index = 0;
    std::vector<std::uint64_t> flagged;  // task indices with lambda > epsilon

    void record(std::uint64_t index, double lambda, double epsilon) {
        if (lambda > epsilon) {
            ++count;
            flagged.push_back(index);
        }
        if (lambda > lambda_max || (lambda == lambda_max && index < argmax_index)) {
            lambda_max = lambda;
            argmax_index = index;
        }
    }

    void merge(const CellAccumulator& other) {
        count += other.count;
        flagged.insert(flagged.end(), other.flagged.begin(), other.flagged.end());
        if (other.lambda_max > lambda_max ||
            (other.lambda_max == lambda_max && other.argmax_index < argmax_index)) {
            lambda_max = other.lambda_max;
            argmax_index = other.argmax_index;
        }
    }
};

void validate_sample_config(const SampleConfig& cfg) {
    if (cfg.t <= 0) throw std::invalid_argument("t must be positive");
    if (cfg.repeats <= 0) throw std::invalid_argument("repeats must be positive");
    if (cfg.n < 2) throw std::invalid_argument("set size n must be >= 2");
    if (static_cast<std::uint64_t>(cfg.n) > factorial_capped(cfg.m))
        throw std::invalid_argument("n exceeds m!: no duplicate-free set exists");
}

}  // namespace

SolutionSet::SolutionSet(std::vector<Permutation> members) {
    if (members.size() < 1) throw std::invalid_argument("solution set must not be empty");
    const int m = members.front().size();
    for (const auto& p : members)
        if (p.size() != m) throw std::invalid_argument("mixed permutation lengths in set");
    std::set<Permutation> unique(members.begin(), members.end());
    if (unique.size() != members.size())
        throw std::invalid_argument("solution set members must be pairwise distinct");
    members_ = std::move(members);
}

Matrix distance_matrix(Measure measure, const SolutionSet& set) {
    return distance_matrix(measure, std::span<const Permutation>(set.members()));
}

SolutionSet random_solution_set(int m, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("set size must be >= 1");
    if (static_cast<std::uint64_t>(n) > factorial_capped(m))
        throw std::invalid_argument("n exceeds m!: no duplicate-free set exists");
    std::vector<Permutation> members;
    members.reserve(static_cast<std::size_t>(n));
    std::set<Permutation> seen;
    while (static_cast<int>(members.size()) < n) {
        Permutation p = random_permutation(m, rng);
        if (seen.insert(p).second) members.push_back(std::move(p));
    }
    return SolutionSet(std::move(members));
}

std::uint64_t solution_set_count(int m, int n, std::uint64_t cap) {
    const std::uint64_t nm = factorial_capped(m);
    return binomial_capped(nm, static_cast<std::uint64_t>(n), cap);
}

// --- random sampling (A1) ---------------------------------------------------

namespace {

// One sampling task: regenerate the set of (repeat, set_index) from its
// substream and compute the critical eigenvalue.
double evaluate_sample_task(const SampleConfig& cfg, int repeat, std::uint64_t set_index,
                            CnsdScratch& scratch, Matrix& d_buf) {
    Rng rng = make_rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(repeat), set_index));
    const SolutionSet set = random_solution_set(cfg.m, cfg.n, rng);
    d_buf = distance_matrix(cfg.measure, set);
    return cnsd_lambda_max(d_buf, scratch);
}

SolutionSet regenerate_sample_set(const SampleConfig& cfg, int repeat, std::uint64_t set_index) {
    Rng rng = make_rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(repeat), set_index));
    return random_solution_set(cfg.m, cfg.n, rng);
}

ProbeReport assemble_probe_report(const SampleConfig& cfg,
                                  std::vector<CellAccumulator> per_repeat) {
    ProbeReport report;
    report.config = cfg;
    report.repeats.reserve(static_cast<std::size_t>(cfg.repeats));

    CellAccumulator overall;
    double sum_p = 0.0, sum_lambda = 0.0;
    for (int r = 0; r < cfg.repeats; ++r) {
        auto& acc = per_repeat[static_cast<std::size_t>(r)];
        std::sort(acc.flagged.begin(), acc.flagged.end());
        RepeatStats stats;
        stats.repeat = r;
        stats.n_lambda_plus = acc.count;
        stats.p = static_cast<double>(acc.count) / static_cast<double>(cfg.t);
        stats.lambda_max = acc.lambda_max;
        report.repeats.push_back(stats);
        report.n_lambda_plus_total += acc.count;
        sum_p += stats.p;
        sum_lambda += stats.lambda_max;

        // Witness indices are repeat-local; lift them to campaign order.
        if (static_cast<int>(overall.flagged.size()) < kMaxWitnesses) {
            for (std::uint64_t idx : acc.flagged) {
                if (static_cast<int>(overall.flagged.size()) >= kMaxWitnesses) break;
                overall.flagged.push_back(static_cast<std::uint64_t>(r) * cfg.t + idx);
            }
        }
        if (acc.lambda_max > report.lambda_max_overall) {
            report.lambda_max_overall = acc.lambda_max;
            overall.argmax_index = static_cast<std::uint64_t>(r) * cfg.t + acc.argmax_index;
        }
    }
    report.mean_p = sum_p / cfg.repeats;
    report.mean_lambda_max = sum_lambda / cfg.repeats;

    for (std::uint64_t flat : overall.flagged) {
        const int r = static_cast<int>(flat / static_cast<std::uint64_t>(cfg.t));
        const std::uint64_t s = flat % static_cast<std::uint64_t>(cfg.t);
        Witness w;
        w.repeat = r;
        w.set_index = s;
        w.set = regenerate_sample_set(cfg, r, s);
        w.lambda = cnsd_lambda_max(distance_matrix(cfg.measure, w.set));
        report.witnesses.push_back(std::move(w));
    }
    {
        const int r = static_cast<int>(overall.argmax_index / static_cast<std::uint64_t>(cfg.t));
        const std::uint64_t s = overall.argmax_index % static_cast<std::uint64_t>(cfg.t);
        Witness w;
        w.repeat = r;
        w.set_index = s;
        w.set = regenerate_sample_set(cfg, r, s);
        w.lambda = report.lambda_max_overall;
        report.argmax = std::move(w);
    }
    return report;
}

}  // namespace

ProbeReport sample_probe_serial(const SampleConfig& cfg) {
    validate_sample_config(cfg);
    std::vector<CellAccumulator> per_repeat(static_cast<std::size_t>(cfg.repeats));
    CnsdScratch scratch;
    Matrix d_buf;
    for (int r = 0; r < cfg.repeats; ++r) {
        for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(cfg.t); ++s) {
            const double lambda = evaluate_sample_task(cfg, r, s, scratch, d_buf);
            per_repeat[static_cast<std::size_t>(r)].record(s, lambda, cfg.epsilon);
        }
    }
    return assemble_probe_report(cfg, std::move(per_repeat));
}

ProbeReport sample_probe(const SampleConfig& cfg, Exec exec) {
    if (exec == Exec::Serial) return sample_probe_serial(cfg);
    validate_sample_config(cfg);

    const std::uint64_t total = static_cast<std::uint64_t>(cfg.repeats) * static_cast<std::uint64_t>(cfg.t);
    const int threads = omp_get_max_threads();
    std::vector<std::vector<CellAccumulator>> partial(
        static_cast<std::size_t>(threads),
        std::vector<CellAccumulator>(static_cast<std::size_t>(cfg.repeats)));

#pragma omp parallel
    {
        const int tid = omp_get_thread_num();
        auto& mine = partial[static_cast<std::size_t>(tid)];
        CnsdScratch scratch;
        Matrix d_buf;
#pragma omp for schedule(static)
        for (std::int64_t flat = 0; flat < static_cast<std::int64_t>(total); ++flat) {
            const int r = static_cast<int>(flat / cfg.t);
            const std::uint64_t s = static_cast<std::uint64_t>(flat % cfg.t);
            const double lambda = evaluate_sample_task(cfg, r, s, scratch, d_buf);
            mine[static_cast<std::size_t>(r)].record(s, lambda, cfg.epsilon);
        }
    }

    std::vector<CellAccumulator> per_repeat(static_cast<std::size_t>(cfg.repeats));
    for (const auto& worker : partial)
        for (int r = 0; r < cfg.repeats; ++r)
            per_repeat[static_cast<std::size_t>(r)].merge(worker[static_cast<std::size_t>(r)]);
    return assemble_probe_report(cfg, std::move(per_repeat));
}

// --- brute force -------------------------------------------------------------

namespace {

struct BruteContext {
    Measure measure = Measure::Insert;
    int n = 0, m = 0;
    double epsilon = kDefaultEpsilon;
    std::uint64_t n_s = 0;
    int n_perms = 0;
    Matrix table;  // full pairwise distance matrix over all m! permutations
};

BruteContext prepare_brute(Measure measure, int n, int m, double epsilon) {
    if (n < 2) throw std::invalid_argument("set size n must be >= 2");
    const std::uint64_t n_perms = factorial_capped(m);
    if (static_cast<std::uint64_t>(n) > n_perms)
        throw std::invalid_argument("n exceeds m!: no duplicate-free set exists");
    const std::uint64_t n_s = solution_set_count(m, n, kBruteForceGuard);
    if (n_s > kBruteForceGuard) {
        throw capability_error("brute force needs C(m!, n) <= " + std::to_string(kBruteForceGuard) +
                               "; C(" + std::to_string(n_perms) + ", " + std::to_string(n) +
                               ") exceeds the guard");
    }

    BruteContext ctx;
    ctx.measure = measure;
    ctx.n = n;
    ctx.m = m;
    ctx.epsilon = epsilon;
    ctx.n_s = n_s;
    ctx.n_perms = static_cast<int>(n_perms);

    // The guard caps C(m!, n) at 1e7, which caps m! at a few thousand: the
    // full pairwise table always fits.
    std::vector<Permutation> perms;
    perms.reserve(static_cast<std::size_t>(ctx.n_perms));
    for (std::uint64_t rank = 0; rank < n_perms; ++rank)
        perms.push_back(permutation_from_rank(m, rank));
    ctx.table = distance_matrix(measure, perms);
    return ctx;
}

double evaluate_combination(const BruteContext& ctx, const std::vector<int>& combo,
                            Matrix& d_buf, CnsdScratch& scratch) {
    const int n = ctx.n;
    d_buf.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = ctx.table(combo[static_cast<std::size_t>(i)], combo[static_cast<std::size_t>(j)]);
            d_buf(i, j) = v;
            d_buf(j, i) = v;
        }
        d_buf(i, i) = 0.0;
    }
    return cnsd_lambda_max(d_buf, scratch);
}

SolutionSet combination_to_set(const BruteContext& ctx, std::uint64_t rank) {
    const auto combo = combination_unrank(rank, ctx.n_perms, ctx.n);
    std::vector<Permutation> members;
    members.reserve(static_cast<std::size_t>(ctx.n));
    for (int idx : combo) members.push_back(permutation_from_rank(ctx.m, static_cast<std::uint64_t>(idx)));
    return SolutionSet(std::move(members));
}

BruteForceReport assemble_brute_report(const BruteContext& ctx, CellAccumulator acc) {
    std::sort(acc.flagged.begin(), acc.flagged.end());
    BruteForceReport report;
    report.measure = ctx.measure;
    report.n = ctx.n;
    report.m = ctx.m;
    report.epsilon = ctx.epsilon;
    report.n_s = ctx.n_s;
    report.n_lambda_plus = static_cast<std::uint64_t>(acc.count);
    report.p = static_cast<double>(acc.count) / static_cast<double>(ctx.n_s);
    report.lambda_max = acc.lambda_max;

    const int keep = std::min<int>(kMaxWitnesses, static_cast<int>(acc.flagged.size()));
    Matrix d_buf;
    CnsdScratch scratch;
    for (int i = 0; i < keep; ++i) {
        Witness w;
        w.repeat = 0;
        w.set_index = acc.flagged[static_cast<std::size_t>(i)];
        w.set = combination_to_set(ctx, w.set_index);
        const auto combo = combination_unrank(w.set_index, ctx.n_perms, ctx.n);
        w.lambda = evaluate_combination(ctx, combo, d_buf, scratch);
        report.witnesses.push_back(std::move(w));
    }
    {
        Witness w;
        w.repeat = 0;
        w.set_index = acc.argmax_index;
        w.set = combination_to_set(ctx, w.set_index);
        w.lambda = acc.lambda_max;
        report.argmax = std::move(w);
    }
    return report;
}

}  // namespace

BruteForceReport brute_force_probe_serial(Measure measure, int n, int m, double epsilon) {
    const BruteContext ctx = prepare_brute(measure, n, m, epsilon);

    // Reference path: odometer enumeration, no unranking involved.
    CellAccumulator acc;
    std::vector<int> combo(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) combo[static_cast<std::size_t>(i)] = i;
    Matrix d_buf;
    CnsdScratch scratch;
    std::uint64_t rank = 0;
    do {
        acc.record(rank, evaluate_combination(ctx, combo, d_buf, scratch), epsilon);
        ++rank;
    } while (next_combination(combo, ctx.n_perms));
    return assemble_brute_report(ctx, std::move(acc));
}

BruteForceReport brute_force_probe(Measure measure, int n, int m, double epsilon, Exec exec) {
    if (exec == Exec::Serial) return brute_force_probe_serial(measure, n, m, epsilon);
    const BruteContext ctx = prepare_brute(measure, n, m, epsilon);

    const int threads = omp_get_max_threads();
    std::vector<CellAccumulator> partial(static_cast<std::size_t>(threads));

#pragma omp parallel
    {
        const int tid = omp_get_thread_num();
        auto& acc = partial[static_cast<std::size_t>(tid)];
        Matrix d_buf;
        CnsdScratch scratch;

        // Contiguous rank blocks: unrank once per block, then advance by
        // odometer, which is far cheaper than unranking every combination.
        const std::uint64_t chunk = (ctx.n_s + static_cast<std::uint64_t>(threads) - 1) /
                                    static_cast<std::uint64_t>(threads);
        const std::uint64_t begin = chunk * static_cast<std::uint64_t>(tid);
        const std::uint64_t end = std::min(ctx.n_s, begin + chunk);
        if (begin < end) {
            std::vector<int> combo = combination_unrank(begin, ctx.n_perms, ctx.n);
            for (std::uint64_t rank = begin; rank < end; ++rank) {
                acc.record(rank, evaluate_combination(ctx, combo, d_buf, scratch), epsilon);
                if (rank + 1 < end) next_combination(combo, ctx.n_perms);
            }
        }
    }

    CellAccumulator acc;
    for (auto& part : partial) acc.merge(part);
    return assemble_brute_report(ctx, std::move(acc));
}

}  // namespace defprobe
