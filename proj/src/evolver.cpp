#include "defprobe/evolver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace defprobe {

namespace {

void validate_config(const EaConfig& cfg, int n, int m) {
    if (cfg.population_size < 2) throw std::invalid_argument("population size must be >= 2");
    if (cfg.budget < cfg.population_size)
        throw std::invalid_argument("budget must cover the initial population");
    if (cfg.recombination_rate < 0.0 || cfg.recombination_rate > 1.0)
        throw std::invalid_argument("recombination rate must lie in [0, 1]");
    if (cfg.mutation_rate > 1.0) throw std::invalid_argument("mutation rate must lie in [0, 1]");
    if (n < 2) throw std::invalid_argument("set size n must be >= 2");
    if (static_cast<std::uint64_t>(n) > factorial_capped(m))
        throw std::invalid_argument("n exceeds m!: no duplicate-free set exists");
    for (const auto& s : cfg.initial_members) {
        if (s.size() != n || s.element_length() != m)
            throw std::invalid_argument("seeded initial member has wrong n or m");
    }
}

}  // namespace

std::string_view submutation_id(SubMutation op) {
    switch (op) {
        case SubMutation::Swap: return "swap";
        case SubMutation::Interchange: return "interchange";
        case SubMutation::Reversal: return "reversal";
    }
    return "swap";
}

SubMutation submutation_from_id(std::string_view id) {
    if (id == "swap") return SubMutation::Swap;
    if (id == "interchange") return SubMutation::Interchange;
    if (id == "reversal") return SubMutation::Reversal;
    throw std::invalid_argument("unknown submutation id: " + std::string(id));
}

double fitness(const SolutionSet& x, Measure measure) {
    return cnsd_lambda_max(distance_matrix(measure, x));
}

Permutation apply_swap(const Permutation& pi, int a) {
    const int m = pi.size();
    if (a < 1 || a >= m) throw std::invalid_argument("swap position out of range");
    std::vector<int> e = pi.elements();
    std::swap(e[static_cast<std::size_t>(a - 1)], e[static_cast<std::size_t>(a)]);
    return trusted_permutation(std::move(e));
}

Permutation apply_interchange(const Permutation& pi, int a, int b) {
    const int m = pi.size();
    if (a < 1 || a > m || b < 1 || b > m) throw std::invalid_argument("interchange position out of range");
    std::vector<int> e = pi.elements();
    std::swap(e[static_cast<std::size_t>(a - 1)], e[static_cast<std::size_t>(b - 1)]);
    return trusted_permutation(std::move(e));
}

Permutation apply_reversal(const Permutation& pi, int a, int b) {
    const int m = pi.size();
    if (a < 1 || b > m || a >= b) throw std::invalid_argument("reversal bounds out of range");
    std::vector<int> e = pi.elements();
    std::reverse(e.begin() + (a - 1), e.begin() + b);
    return trusted_permutation(std::move(e));
}

Permutation submutate(const Permutation& pi, SubMutation op, Rng& rng) {
    const int m = pi.size();
    if (m < 2) throw std::invalid_argument("submutation needs m >= 2");
    switch (op) {
        case SubMutation::Swap: {
            const int a = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(m - 1)));
            return apply_swap(pi, a);
        }
        case SubMutation::Interchange: {
            // Two distinct positions; a == b would be a silent no-op.
            const int a = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(m)));
            int b = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(m - 1)));
            if (b >= a) ++b;
            return apply_interchange(pi, a, b);
        }
        case SubMutation::Reversal: {
            // Uniform pair a < b.
            const int a = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(m - 1)));
            const int b = a + 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(m - a)));
            return apply_reversal(pi, a, b);
        }
    }
    throw std::invalid_argument("unknown submutation");
}

SolutionSet repair(std::vector<Permutation> members, Rng& rng) {
    const int n = static_cast<int>(members.size());
    if (n < 1) throw std::invalid_argument("cannot repair an empty set");
    const int m = members.front().size();
    if (static_cast<std::uint64_t>(n) > factorial_capped(m))
        throw std::invalid_argument("n exceeds m!: cannot make members unique");

    std::set<Permutation> seen;
    std::vector<int> duplicate_slots;
    for (int i = 0; i < n; ++i) {
        if (!seen.insert(members[static_cast<std::size_t>(i)]).second)
            duplicate_slots.push_back(i);
    }
    for (int slot : duplicate_slots) {
        for (;;) {
            Permutation fresh = random_permutation(m, rng);
            if (seen.insert(fresh).second) {
                members[static_cast<std::size_t>(slot)] = std::move(fresh);
                break;
            }
        }
    }
    return SolutionSet(std::move(members));
}

SolutionSet mutate(const SolutionSet& x, SubMutation op, double mutation_rate, Rng& rng) {
    const int n = x.size();
    std::vector<char> selected(static_cast<std::size_t>(n), 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
        if (bernoulli(rng, mutation_rate)) {
            selected[static_cast<std::size_t>(i)] = 1;
            any = true;
        }
    }
    if (!any) {
        const int j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
        selected[static_cast<std::size_t>(j)] = 1;
    }
    std::vector<Permutation> members = x.members();
    for (int i = 0; i < n; ++i) {
        if (selected[static_cast<std::size_t>(i)])
            members[static_cast<std::size_t>(i)] = submutate(members[static_cast<std::size_t>(i)], op, rng);
    }
    return repair(std::move(members), rng);
}

SolutionSet recombine(const SolutionSet& x1, const SolutionSet& x2, Rng& rng) {
    if (x1.size() != x2.size() || x1.element_length() != x2.element_length())
        throw std::invalid_argument("parents must share n and m");
    const int n = x1.size();
    if (n < 2) throw std::invalid_argument("recombination needs n >= 2");

    // k from the first parent, n - k from the second, both sampled without
    // replacement via partial Fisher-Yates over member indices.
    const int k = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));

    auto pick = [&rng](const SolutionSet& parent, int take) {
        const int n_total = parent.size();
        std::vector<int> idx(static_cast<std::size_t>(n_total));
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<Permutation> out;
        out.reserve(static_cast<std::size_t>(take));
        for (int i = 0; i < take; ++i) {
            const int j = i + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n_total - i)));
            std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
            out.push_back(parent[idx[static_cast<std::size_t>(i)]]);
        }
        return out;
    };

    std::vector<Permutation> child = pick(x1, k);
    std::vector<Permutation> tail = pick(x2, n - k);
    child.insert(child.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
    return repair(std::move(child), rng);
}

namespace {

// Fitness of a whole offspring batch; entries are independent, so the OpenMP
// schedule cannot change any value.
void evaluate_batch(const std::vector<SolutionSet>& sets, Measure measure,
                    std::vector<double>& lambdas) {
    lambdas.resize(sets.size());
#pragma omp parallel
    {
        CnsdScratch scratch;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i)
            lambdas[static_cast<std::size_t>(i)] =
                cnsd_lambda_max(distance_matrix(measure, sets[static_cast<std::size_t>(i)]), scratch);
    }
}

struct Individual {
    SolutionSet set;
    double lambda = -std::numeric_limits<double>::infinity();
};

}  // namespace

EaResult ea_probe(Measure measure, int n, int m, const EaConfig& cfg, Exec exec) {
    validate_config(cfg, n, m);
    const int r = cfg.population_size;
    const double mutation_rate = cfg.mutation_rate > 0.0 ? cfg.mutation_rate : 1.0 / m;

    Rng rng = make_rng(cfg.seed);
    EaResult result;

    // Budget accounting follows evaluation order within each batch: the run
    // is charged up to and including the first witness, exactly as if the
    // batch had been evaluated one by one.
    std::vector<SolutionSet> batch;
    std::vector<double> lambdas;
    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(2 * r));

    auto record = [&](SolutionSet&& set, double lambda) -> bool {
        ++result.evaluations_used;
        if (lambda > result.best_lambda) result.best_lambda = lambda;
        population.push_back({std::move(set), lambda});
        if (lambda > cfg.epsilon) {
            result.found = true;
            result.witness = population.back().set;
            return true;
        }
        return false;
    };

    auto consume_batch = [&](std::vector<SolutionSet>& sets) -> bool {
        if (exec == Exec::Serial) {
            // Reference path: evaluate one by one and stop at the first
            // witness, so evaluations_used equals the fitness calls made.
            CnsdScratch scratch;
            for (auto& set : sets) {
                const double lambda = cnsd_lambda_max(distance_matrix(measure, set), scratch);
                if (record(std::move(set), lambda)) return true;
            }
            return false;
        }
        // Parallel path evaluates the whole batch, then charges the budget
        // in order; results match the reference bit for bit.
        evaluate_batch(sets, measure, lambdas);
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (record(std::move(sets[i]), lambdas[i])) return true;
        return false;
    };

    // Initial population: seeded members first, random fill.
    batch.clear();
    for (const auto& s : cfg.initial_members) {
        if (static_cast<int>(batch.size()) >= r) break;
        batch.push_back(s);
    }
    while (static_cast<int>(batch.size()) < r) batch.push_back(random_solution_set(m, n, rng));
    bool done = consume_batch(batch);

    auto best_of = [&]() {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& ind : population) best = std::max(best, ind.lambda);
        return best;
    };
    result.history.push_back(best_of());

    while (!done && result.evaluations_used < cfg.budget) {
        // Truncation: keep the best r as the current population, stable in
        // insertion order so ties are deterministic.
        std::stable_sort(population.begin(), population.end(),
                         [](const Individual& a, const Individual& b) { return a.lambda > b.lambda; });
        if (static_cast<int>(population.size()) > r)
            population.resize(static_cast<std::size_t>(r));

        // Parent pool: best half of the current population.
        const int pool = std::max(2, r / 2);

        const long long remaining = cfg.budget - result.evaluations_used;
        const int offspring = static_cast<int>(std::min<long long>(r, remaining));
        batch.clear();
        batch.reserve(static_cast<std::size_t>(offspring));
        for (int i = 0; i < offspring; ++i) {
            SolutionSet child = [&] {
                if (bernoulli(rng, cfg.recombination_rate)) {
                    const int p1 = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(pool)));
                    int p2 = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(pool - 1)));
                    if (p2 >= p1) ++p2;
                    return recombine(population[static_cast<std::size_t>(p1)].set,
                                     population[static_cast<std::size_t>(p2)].set, rng);
                }
                const int p = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(pool)));
                return population[static_cast<std::size_t>(p)].set;
            }();
            batch.push_back(mutate(child, cfg.submutation, mutation_rate, rng));
        }
        done = consume_batch(batch);
        result.history.push_back(best_of());
    }

    if (result.witness) {
        // Independent re-verification before handing the witness out.
        const CnsdReport check = cnsd_check(distance_matrix(measure, *result.witness), cfg.epsilon);
        if (check.is_cnsd())
            throw std::logic_error("EA witness failed cnsd_check re-verification");
    }
    return result;
}

}  // namespace defprobe
