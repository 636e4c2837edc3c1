// defprobe: empirical definiteness probing for distance-based kernels.
//
// Subcommands map onto the library campaigns: `sample` (random sampling),
// `brute` (exact enumeration), `ea` (evolutionary search), `gp` (model
// verification), `check-matrix` (one matrix from a file), `fixtures`
// (the shipped minimal indefinite examples).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "defprobe/errors.hpp"
#include "defprobe/evolver.hpp"
#include "defprobe/fixtures.hpp"
#include "defprobe/gp.hpp"
#include "defprobe/matrix_io.hpp"
#include "defprobe/report.hpp"
#include "defprobe/sampler.hpp"

using namespace defprobe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitPartialFailure = 2;

// "4", "4..8", and "4,6,8" are all accepted wherever a range is expected.
std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoi(part));
        } else {
            const int lo = std::stoi(part.substr(0, dots));
            const int hi = std::stoi(part.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("descending range: " + part);
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty range: " + text);
    return out;
}

std::vector<Measure> parse_measures(const std::vector<std::string>& ids) {
    std::vector<Measure> out;
    for (const auto& id : ids) {
        if (id == "all") {
            out.assign(all_measures().begin(), all_measures().end());
            return out;
        }
        out.push_back(measure_from_id(id));
    }
    if (out.empty()) throw std::invalid_argument("no measures given");
    return out;
}

struct OutputTarget {
    std::ofstream file;
    bool to_file = false;

    std::ostream& stream() { return to_file ? file : std::cout; }

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        to_file = true;
    }
};

struct GridOptions {
    std::vector<std::string> measure_ids;
    std::string n_range = "5";
    std::string m_range = "4";
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    double epsilon = kDefaultEpsilon;
    int threads = 0;
    bool serial = false;
};

void add_grid_options(CLI::App* cmd, GridOptions& opt) {
    cmd->add_option("--measure", opt.measure_ids,
                    "measure ids (lev swa int ins lcstr r adj pos posq ham euc man che lee cos lex) "
                    "or 'all'")
        ->required()
        ->delimiter(',');
    cmd->add_option("--n", opt.n_range, "set sizes, e.g. 6 or 4..8 or 5,7");
    cmd->add_option("--m", opt.m_range, "permutation lengths, same syntax");
    cmd->add_option("--out", opt.out_path, "report file (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--epsilon", opt.epsilon, "eigenvalue tolerance");
    cmd->add_option("--threads", opt.threads, "worker count (default: DEFPROBE_THREADS or all cores)");
    cmd->add_flag("--serial", opt.serial, "run the serial reference implementation");
}

Exec apply_parallel_options(const GridOptions& opt) {
    int threads = opt.threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("DEFPROBE_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
    return opt.serial ? Exec::Serial : Exec::Parallel;
}

bool cell_is_runnable(int n, int m) {
    return static_cast<std::uint64_t>(n) <= factorial_capped(m);
}

void note_skip(OutputTarget& out, bool comment_in_report, Measure measure, int n, int m,
               const std::string& reason) {
    if (comment_in_report)
        out.stream() << "# skipped measure=" << measure_id(measure) << " n=" << n << " m=" << m
                     << " reason=" << reason << "\n";
    std::cerr << "skipped " << measure_id(measure) << " n=" << n << " m=" << m << ": " << reason
              << "\n";
}

int run_sample(const GridOptions& opt, long long t, int repeats) {
    const Exec exec = apply_parallel_options(opt);
    const auto measures = parse_measures(opt.measure_ids);
    const auto ns = parse_int_range(opt.n_range);
    const auto ms = parse_int_range(opt.m_range);

    OutputTarget out;
    out.open(opt.out_path);
    const bool json = opt.format == "json";
    if (json)
        out.stream() << "[\n";
    else
        write_sample_csv_header(out.stream());

    bool first_json = true;
    int failures = 0;
    for (Measure measure : measures)
        for (int n : ns)
            for (int m : ms) {
                if (!cell_is_runnable(n, m)) {
                    note_skip(out, !json, measure, n, m, "n-exceeds-m!");
                    continue;
                }
                SampleConfig cfg;
                cfg.measure = measure;
                cfg.n = n;
                cfg.m = m;
                cfg.t = t;
                cfg.repeats = repeats;
                cfg.epsilon = opt.epsilon;
                cfg.seed = opt.seed;
                try {
                    const ProbeReport report = sample_probe(cfg, exec);
                    if (json) {
                        out.stream() << (first_json ? "" : ",\n") << probe_report_json(report);
                        first_json = false;
                        out.stream().flush();
                    } else {
                        append_sample_csv(out.stream(), report);
                    }
                } catch (const std::exception& e) {
                    std::cerr << "cell " << measure_id(measure) << " n=" << n << " m=" << m
                              << " failed: " << e.what() << "\n";
                    ++failures;
                }
            }
    if (json) out.stream() << "\n]\n";
    return failures == 0 ? kExitOk : kExitPartialFailure;
}

int run_brute(const GridOptions& opt) {
    const Exec exec = apply_parallel_options(opt);
    const auto measures = parse_measures(opt.measure_ids);
    const auto ns = parse_int_range(opt.n_range);
    const auto ms = parse_int_range(opt.m_range);

    OutputTarget out;
    out.open(opt.out_path);
    const bool json = opt.format == "json";
    if (json)
        out.stream() << "[\n";
    else
        write_brute_csv_header(out.stream());

    bool first_json = true;
    int failures = 0;
    for (Measure measure : measures)
        for (int n : ns)
            for (int m : ms) {
                if (!cell_is_runnable(n, m)) {
                    note_skip(out, !json, measure, n, m, "n-exceeds-m!");
                    continue;
                }
                try {
                    const BruteForceReport report =
                        brute_force_probe(measure, n, m, opt.epsilon, exec);
                    if (json) {
                        out.stream() << (first_json ? "" : ",\n") << brute_report_json(report);
                        first_json = false;
                        out.stream().flush();
                    } else {
                        append_brute_csv(out.stream(), report);
                    }
                } catch (const capability_error& e) {
                    note_skip(out, !json, measure, n, m, "over-enumeration-guard");
                    std::cerr << e.what() << "\n";
                    ++failures;
                } catch (const std::exception& e) {
                    std::cerr << "cell " << measure_id(measure) << " n=" << n << " m=" << m
                              << " failed: " << e.what() << "\n";
                    ++failures;
                }
            }
    if (json) out.stream() << "\n]\n";
    return failures == 0 ? kExitOk : kExitPartialFailure;
}

int run_ea(const GridOptions& opt, EaConfig base, int runs, const std::string& submutation) {
    const Exec exec = apply_parallel_options(opt);
    const auto measures = parse_measures(opt.measure_ids);
    const auto ns = parse_int_range(opt.n_range);
    const auto ms = parse_int_range(opt.m_range);
    base.submutation = submutation_from_id(submutation);
    base.epsilon = opt.epsilon;

    OutputTarget out;
    out.open(opt.out_path);
    const bool json = opt.format == "json";
    if (json)
        out.stream() << "[\n";
    else
        write_ea_csv_header(out.stream());

    bool first_json = true;
    int failures = 0;
    std::uint64_t cell = 0;
    for (Measure measure : measures)
        for (int n : ns)
            for (int m : ms) {
                if (!cell_is_runnable(n, m)) {
                    note_skip(out, !json, measure, n, m, "n-exceeds-m!");
                    ++cell;
                    continue;
                }
                for (int run = 0; run < runs; ++run) {
                    EaConfig cfg = base;
                    cfg.seed = substream_seed(opt.seed, cell, static_cast<std::uint64_t>(run));
                    try {
                        const EaResult result = ea_probe(measure, n, m, cfg, exec);
                        if (json) {
                            out.stream() << (first_json ? "" : ",\n")
                                         << ea_result_json(measure, n, m, cfg, result);
                            first_json = false;
                            out.stream().flush();
                        } else {
                            append_ea_csv(out.stream(), measure, n, m, cfg, result);
                        }
                        std::cerr << measure_id(measure) << " n=" << n << " m=" << m
                                  << " run=" << run
                                  << (result.found ? " found after " : " exhausted at ")
                                  << result.evaluations_used << " evaluations\n";
                    } catch (const std::exception& e) {
                        std::cerr << "run " << measure_id(measure) << " n=" << n << " m=" << m
                                  << " failed: " << e.what() << "\n";
                        ++failures;
                    }
                }
                ++cell;
            }
    if (json) out.stream() << "\n]\n";
    return failures == 0 ? kExitOk : kExitPartialFailure;
}

int run_gp(const GridOptions& opt, int runs, int test_size) {
    const Exec exec = apply_parallel_options(opt);
    const auto measures = parse_measures(opt.measure_ids);
    const auto ns = parse_int_range(opt.n_range);
    const auto ms = parse_int_range(opt.m_range);

    OutputTarget out;
    out.open(opt.out_path);
    write_gp_csv_header(out.stream());

    int failures = 0;
    std::uint64_t cell = 0;
    for (Measure measure : measures)
        for (int n : ns)
            for (int m : ms) {
                // Training may not exhaust the space: test points must exist.
                if (static_cast<std::uint64_t>(n) >= factorial_capped(m)) {
                    note_skip(out, true, measure, n, m, "n-exhausts-m!");
                    ++cell;
                    continue;
                }
                GpCampaignConfig cfg;
                cfg.measures = {measure};
                cfg.ns = {n};
                cfg.ms = {m};
                cfg.runs_per_cell = runs;
                cfg.test_size = test_size;
                cfg.seed = substream_seed(opt.seed, cell, 0);
                try {
                    for (const RmseRun& run : rmse_campaign(cfg, exec))
                        append_gp_csv(out.stream(), run);
                } catch (const std::exception& e) {
                    std::cerr << "cell " << measure_id(measure) << " n=" << n << " m=" << m
                              << " failed: " << e.what() << "\n";
                    ++failures;
                }
                ++cell;
            }
    return failures == 0 ? kExitOk : kExitPartialFailure;
}

int run_check_matrix(const std::string& path, double epsilon) {
    const Matrix d = read_distance_matrix_file(path);
    const CnsdReport report = cnsd_check(d, epsilon);
    std::cout << (report.is_cnsd() ? "CNSD" : "not CNSD")
              << ", lambda_max = " << format_number(report.lambda_max)
              << " (epsilon = " << format_number(epsilon) << ", order = " << d.order() << ")\n";
    std::cout << "spectrum of reduced matrix:";
    for (double v : report.spectrum) std::cout << ' ' << format_number(v);
    std::cout << "\n";
    return kExitOk;
}

std::vector<std::string> fixture_comments(const Fixture& f) {
    std::vector<std::string> comments{f.id + " domain=" + f.domain + " measure=" + f.measure_id +
                                      " lambda~" + format_number(f.lambda_printed)};
    for (const auto& obj : f.objects) comments.push_back("object " + obj);
    return comments;
}

int run_fixtures(const std::string& out_dir) {
    for (const auto& f : appendix_fixtures()) {
        std::cout << f.id << ": domain=" << f.domain << " measure=" << f.measure_id << " n=" << f.n;
        if (f.m > 0) std::cout << " m=" << f.m;
        std::cout << " lambda~" << f.lambda_printed << "\n";
        if (out_dir.empty()) {
            std::ostringstream buf;
            write_distance_matrix(buf, f.matrix, fixture_comments(f));
            std::cout << buf.str();
        }
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& f : appendix_fixtures())
            write_distance_matrix_file(
                (std::filesystem::path(out_dir) / (f.id + ".txt")).string(), f.matrix,
                fixture_comments(f));
        std::cout << "wrote 9 fixture files to " << out_dir << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"empirical definiteness probing for distance-based kernels"};
    app.require_subcommand(1);

    GridOptions sample_opt, brute_opt, ea_opt, gp_opt;

    auto* sample =
        app.add_subcommand("sample", "random-sampling campaign (proportion p of non-CNSD sets)");
    long long sample_t = 10000;
    int sample_repeats = 10;
    add_grid_options(sample, sample_opt);
    sample->add_option("--t", sample_t, "sets per repeat");
    sample->add_option("--repeats", sample_repeats, "independent repeats");

    auto* brute = app.add_subcommand("brute", "exact enumeration of all n-subsets");
    add_grid_options(brute, brute_opt);

    auto* ea = app.add_subcommand("ea", "evolutionary search maximizing the critical eigenvalue");
    EaConfig ea_base;
    int ea_runs = 1;
    std::string ea_submutation = "swap";
    add_grid_options(ea, ea_opt);
    ea->add_option("--budget", ea_base.budget, "fitness evaluation budget");
    ea->add_option("--pop", ea_base.population_size, "population size");
    ea->add_option("--recomb-rate", ea_base.recombination_rate, "recombination probability");
    ea->add_option("--mutation-rate", ea_base.mutation_rate,
                   "per-member mutation rate (default 1/m)");
    ea->add_option("--submutation", ea_submutation, "swap, interchange, or reversal")
        ->check(CLI::IsMember({"swap", "interchange", "reversal"}));
    ea->add_option("--runs", ea_runs, "seeded runs per grid cell");

    auto* gp = app.add_subcommand("gp", "model-quality runs linking lambda to RMSE");
    int gp_runs = 1, gp_test_size = 1000;
    add_grid_options(gp, gp_opt);
    gp->add_option("--runs", gp_runs, "runs per grid cell");
    gp->add_option("--test-size", gp_test_size, "test points per run");

    auto* check = app.add_subcommand("check-matrix", "CNSD verdict for a matrix file");
    std::string check_path;
    double check_epsilon = kDefaultEpsilon;
    check->add_option("file", check_path, "matrix file")->required();
    check->add_option("--epsilon", check_epsilon, "eigenvalue tolerance");

    auto* fixtures = app.add_subcommand("fixtures", "list/emit the minimal indefinite examples");
    std::string fixtures_dir;
    fixtures->add_option("--out-dir", fixtures_dir, "write one file per fixture");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return run_sample(sample_opt, sample_t, sample_repeats);
        if (brute->parsed()) return run_brute(brute_opt);
        if (ea->parsed()) return run_ea(ea_opt, ea_base, ea_runs, ea_submutation);
        if (gp->parsed()) return run_gp(gp_opt, gp_runs, gp_test_size);
        if (check->parsed()) return run_check_matrix(check_path, check_epsilon);
        if (fixtures->parsed()) return run_fixtures(fixtures_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartialFailure;
    }
    return kExitConfigError;
}
