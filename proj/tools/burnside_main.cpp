// Command-line surface: build/export kernels, verify the spectral and
// mixing identities, sample trajectories, emit distance curves. Every
// output embeds its full configuration; identical seeds give identical
// bytes.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "burnside/chains.hpp"
#include "burnside/distributions.hpp"
#include "burnside/io.hpp"
#include "burnside/orthopoly.hpp"
#include "burnside/spectral.hpp"

namespace {

using namespace burnside;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    int n = 1;
    std::string theta_text = "1";
    Rat theta{1};
    int l_max = 10;
    int steps = 1;
    long samples = 1;
    int start = -1;  // lumped start state; defaults to n (all ones)
    double x0 = 1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    std::string format = "csv";
    std::string out_path;
};

Rat parse_theta(const std::string& text) {
    const Rat theta = parse_rational(text);
    if (!(theta > 0)) throw CLI::ValidationError("--theta", "theta must be positive");
    if (text.find('.') != std::string::npos)
        std::cerr << "note: decimal theta '" << text << "' interpreted as the exact fraction "
                  << format_rational(theta) << "\n";
    return theta;
}

std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    if (const char* dir = std::getenv("BURNSIDE_OUTPUT_DIR"))
        return std::string(dir) + "/" + path;
    return path;
}

// Runs fn against --out (or stdout when unset).
int with_output(const Options& opt, const std::function<void(std::ostream&)>& fn) {
    const std::string path = resolve_out(opt.out_path);
    if (path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output path '" << path << "'\n";
        return kExitUsage;
    }
    fn(file);
    return 0;
}

OutputMetadata make_metadata(const std::string& command, const Options& opt,
                             std::initializer_list<std::string> keys) {
    OutputMetadata meta;
    meta.command = command;
    for (const std::string& key : keys) {
        if (key == "n") meta.config.emplace_back("n", std::to_string(opt.n));
        if (key == "theta") meta.config.emplace_back("theta", format_rational(opt.theta));
        if (key == "l_max") meta.config.emplace_back("l_max", std::to_string(opt.l_max));
        if (key == "steps") meta.config.emplace_back("steps", std::to_string(opt.steps));
        if (key == "samples") meta.config.emplace_back("samples", std::to_string(opt.samples));
        if (key == "start") meta.config.emplace_back("start", std::to_string(opt.start));
        if (key == "x0") meta.config.emplace_back("x0", fmt17(opt.x0));
        if (key == "threads") meta.config.emplace_back("threads", std::to_string(opt.threads));
        if (key == "format") meta.config.emplace_back("format", opt.format);
    }
    meta.seed = opt.seed;
    meta.has_seed = opt.seed_set;
    return meta;
}

int run_matrix(Options& opt) {
    const RowStochasticMatrix matrix = build_matrix(ChainSpec{opt.n, opt.theta});
    const OutputMetadata meta = make_metadata("matrix", opt, {"n", "theta", "format"});
    return with_output(opt, [&](std::ostream& out) {
        if (opt.format == "json")
            write_matrix_json(out, matrix, meta);
        else
            write_matrix_csv(out, matrix, meta);
    });
}

int run_spectrum(Options& opt) {
    const ChainSpec spec{opt.n, opt.theta};
    const RowStochasticMatrix matrix = build_matrix(spec);
    const HahnFamilyParams family{opt.n, opt.theta, opt.theta};
    const PolyTable table = hahn_table(family);
    const SpectralReport report = verify_eigenpairs(matrix, table);
    const OutputMetadata meta = make_metadata("spectrum", opt, {"n", "theta", "format"});
    return with_output(opt, [&](std::ostream& out) {
        if (opt.format == "json") {
            ordered_json doc;
            ordered_json md;
            md["command"] = meta.command;
            ordered_json config = ordered_json::object();
            for (const auto& [k, v] : meta.config) config[k] = v;
            md["config"] = config;
            md["version"] = meta.version;
            doc["metadata"] = md;
            ordered_json evs = ordered_json::array();
            for (int degree = 0; degree <= opt.n; ++degree) {
                ordered_json item;
                item["degree"] = degree;
                if (degree % 2 == 0)
                    item["eigenvalue"] = format_rational(
                        degree == 0 ? Rat(1) : eigenvalue_closed_form(opt.theta, degree / 2));
                else
                    item["eigenvalue"] = "0";
                item["residual"] = format_rational(report.residuals[degree]);
                evs.push_back(std::move(item));
            }
            doc["eigenvalues"] = evs;
            doc["max_even_residual"] = format_rational(report.max_even_residual);
            doc["zero_space_residual"] = format_rational(report.zero_space_residual);
            out << doc.dump(2) << "\n";
        } else {
            write_metadata_csv(out, meta);
            out << "degree,eigenvalue,residual\n";
            for (int degree = 0; degree <= opt.n; ++degree) {
                const Rat ev = degree == 0 ? Rat(1)
                               : degree % 2 == 0 ? eigenvalue_closed_form(opt.theta, degree / 2)
                                                 : Rat(0);
                out << degree << "," << fmt17(to_double(ev)) << ","
                    << fmt17(to_double(report.residuals[degree])) << "\n";
            }
        }
    });
}

int run_tv_curve(Options& opt) {
    const OutputMetadata meta = make_metadata("tv-curve", opt, {"n", "theta", "l_max", "format"});
    if (opt.theta == 1) {
        const auto rows = tv_sandwich_check(opt.n, opt.l_max);
        return with_output(opt, [&](std::ostream& out) {
            write_metadata_csv(out, meta);
            out << "l,tv,lower,upper,pass\n";
            for (const auto& row : rows)
                out << row.l << "," << fmt17(to_double(row.tv)) << ","
                    << fmt17(to_double(row.lower)) << "," << fmt17(to_double(row.upper)) << ","
                    << (row.pass ? 1 : 0) << "\n";
        });
    }
    const RowStochasticMatrix matrix = build_matrix(ChainSpec{opt.n, opt.theta});
    const std::vector<Rat> pi = beta_binomial_row(BetaBinomialParams{opt.n, opt.theta, opt.theta});
    return with_output(opt, [&](std::ostream& out) {
        write_metadata_csv(out, meta);
        out << "l,tv,rate_power\n";
        std::vector<Rat> row(opt.n + 1, Rat(0));
        row[opt.n] = 1;
        const double rate = 1.0 / (2.0 * (1.0 + to_double(opt.theta)));
        double rate_pow = 1.0;
        for (int l = 1; l <= opt.l_max; ++l) {
            std::vector<Rat> next(opt.n + 1, Rat(0));
            for (int i = 0; i <= opt.n; ++i)
                for (int j = 0; j <= opt.n; ++j) next[j] += row[i] * matrix.at(i, j);
            row = std::move(next);
            rate_pow *= rate;
            const double tv =
                to_double(tv_distance(std::span<const Rat>(row), std::span<const Rat>(pi)));
            out << l << "," << fmt17(tv) << "," << fmt17(rate_pow) << "\n";
        }
    });
}

int run_verify(Options& opt) {
    const ChainSpec spec{opt.n, opt.theta};
    const RowStochasticMatrix matrix = build_matrix(spec);
    const std::vector<Rat> pi = beta_binomial_row(BetaBinomialParams{opt.n, opt.theta, opt.theta});

    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, bool pass, const std::string& residual) {
        ordered_json check;
        check["name"] = name;
        check["pass"] = pass;
        check["residual"] = residual;
        checks.push_back(std::move(check));
        all_pass = all_pass && pass;
    };

    {  // exact stationarity and detailed balance
        Rat worst(0);
        for (int j = 0; j <= opt.n; ++j) {
            Rat col(0);
            for (int i = 0; i <= opt.n; ++i) col += pi[i] * matrix.at(i, j);
            const Rat dc = abs(col - pi[j]);
            if (dc > worst) worst = dc;
            for (int k = 0; k <= opt.n; ++k) {
                const Rat d = abs(pi[j] * matrix.at(j, k) - pi[k] * matrix.at(k, j));
                if (d > worst) worst = d;
            }
        }
        add_check("stationarity_detailed_balance", worst == 0, format_rational(worst));
    }

    {  // exact eigenpairs against the orthogonal-polynomial family
        const PolyTable table = hahn_table(HahnFamilyParams{opt.n, opt.theta, opt.theta});
        const SpectralReport report = verify_eigenpairs(matrix, table);
        add_check("eigenpair_identity", report.exact_pass(),
                  format_rational(std::max(report.max_even_residual, report.zero_space_residual)));
    }

    if (opt.theta == 1 && opt.n >= 2) {  // mixing sandwich for the untwisted chain
        const auto rows = tv_sandwich_check(opt.n, opt.l_max);
        bool pass = true;
        for (const auto& row : rows) pass = pass && row.pass;
        add_check("tv_geometric_sandwich", pass, "-");
    }

    {  // series transformation identity
        Rat worst(0);
        for (int k = 1; k <= 3; ++k) {
            const Rat r = abs(transformation_identity_check(opt.theta, k));
            if (r > worst) worst = r;
        }
        add_check("series_transformation_identity", worst == 0, format_rational(worst));
    }

    {  // brute-force engine agrees with the convolution kernel after lumping
        const int engine_n = std::min(opt.n, 5);
        const GroupActionTable table = binary_burnside_action(engine_n, opt.theta);
        const Rat discrepancy = lumpability_check(table);
        const RowStochasticMatrix lumped = lump_matrix(table);
        const RowStochasticMatrix direct = build_matrix(ChainSpec{engine_n, opt.theta});
        bool equal = lumped.order() == direct.order();
        for (int i = 0; equal && i < lumped.order(); ++i)
            for (int j = 0; equal && j < lumped.order(); ++j)
                equal = lumped.at(i, j) == direct.at(i, j);
        add_check("orbit_lumping_consistency", equal && discrepancy == 0,
                  format_rational(discrepancy));
    }

    ordered_json doc;
    ordered_json md;
    md["command"] = "verify";
    ordered_json config = ordered_json::object();
    config["n"] = std::to_string(opt.n);
    config["theta"] = format_rational(opt.theta);
    config["l_max"] = std::to_string(opt.l_max);
    md["config"] = config;
    md["version"] = kLibraryVersion;
    doc["metadata"] = md;
    doc["checks"] = checks;
    doc["pass"] = all_pass;
    const int rc = with_output(opt, [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
    if (rc != 0) return rc;
    return all_pass ? 0 : kExitCheckFailure;
}

int run_sample(Options& opt) {
    const ChainSpec spec{opt.n, opt.theta};
    spec.validate();
    const int start = opt.start < 0 ? opt.n : opt.start;
    if (start > opt.n) {
        std::cerr << "error: start state exceeds n\n";
        return kExitUsage;
    }
    Options meta_opt = opt;
    meta_opt.start = start;
    if (opt.samples == 1) {
        const OutputMetadata meta =
            make_metadata("sample", meta_opt, {"n", "theta", "steps", "samples", "start"});
        const TrajectorySample trajectory = sample_trajectory(spec, start, opt.steps, opt.seed);
        return with_output(
            opt, [&](std::ostream& out) { write_trajectory_csv(out, trajectory.states, meta); });
    }
    const OutputMetadata meta = make_metadata(
        "sample", meta_opt, {"n", "theta", "steps", "samples", "start", "threads"});
    // terminal-state histogram, sharded over derived streams
    const int threads = std::max(1, opt.threads);
    std::vector<std::vector<long>> partial(threads, std::vector<long>(opt.n + 1, 0));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            Rng rng = Rng::derive(opt.seed, static_cast<std::uint64_t>(t));
            const long lo = opt.samples * t / threads;
            const long hi = opt.samples * (t + 1) / threads;
            for (long s = lo; s < hi; ++s) {
                int state = start;
                for (int step = 0; step < opt.steps; ++step) state = lumped_step(state, spec, rng);
                ++partial[t][state];
            }
        });
    }
    for (auto& worker : pool) worker.join();
    std::vector<long> counts(opt.n + 1, 0);
    for (const auto& shard : partial)
        for (int j = 0; j <= opt.n; ++j) counts[j] += shard[j];
    return with_output(opt, [&](std::ostream& out) { write_histogram_csv(out, counts, meta); });
}

int run_continuous(Options& opt) {
    if (!(opt.x0 >= 0.0 && opt.x0 <= 1.0)) {
        std::cerr << "error: --x0 must lie in [0,1]\n";
        return kExitUsage;
    }
    const double theta = to_double(opt.theta);
    if (opt.samples == 1) {
        const OutputMetadata meta =
            make_metadata("continuous", opt, {"theta", "steps", "samples", "x0"});
        Rng rng(opt.seed);
        std::vector<double> states;
        double x = opt.x0;
        for (int s = 0; s < opt.steps; ++s) {
            x = continuous_step(x, theta, rng);
            states.push_back(x);
        }
        return with_output(opt,
                           [&](std::ostream& out) { write_continuous_trajectory_csv(out, states, meta); });
    }
    const OutputMetadata meta =
        make_metadata("continuous", opt, {"theta", "steps", "samples", "x0"});
    Rng rng(opt.seed);
    return with_output(opt, [&](std::ostream& out) {
        write_metadata_csv(out, meta);
        out << "sample,state\n";
        for (long s = 0; s < opt.samples; ++s) {
            double x = opt.x0;
            for (int step = 0; step < opt.steps; ++step) x = continuous_step(x, theta, rng);
            out << s << "," << fmt17(x) << "\n";
        }
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Burnside orbit chains: exact kernels, spectra, samplers"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool needs_n) {
        if (needs_n) cmd->add_option("--n", opt.n, "state space size minus one")->check(CLI::PositiveNumber);
        cmd->add_option("--theta", opt.theta_text, "chain weight, exact 'p/q' or decimal");
        cmd->add_option("--format", opt.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", opt.out_path, "output path (default stdout)");
    };

    CLI::App* matrix = app.add_subcommand("matrix", "export the exact transition kernel");
    add_common(matrix, true);
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues with exact residual status");
    add_common(spectrum, true);
    CLI::App* verify = app.add_subcommand("verify", "run the exact verification suite");
    add_common(verify, true);
    verify->add_option("--l-max", opt.l_max, "distance-curve horizon")->check(CLI::PositiveNumber);
    CLI::App* tv_curve = app.add_subcommand("tv-curve", "distance-to-stationarity curve");
    add_common(tv_curve, true);
    tv_curve->add_option("--l-max", opt.l_max, "curve horizon")->check(CLI::PositiveNumber);
    CLI::App* sample = app.add_subcommand("sample", "sample the lumped chain");
    add_common(sample, true);
    sample->add_option("--steps", opt.steps, "steps per trajectory")->check(CLI::PositiveNumber);
    sample->add_option("--samples", opt.samples, "number of trajectories")
        ->check(CLI::PositiveNumber);
    sample->add_option("--start", opt.start, "start state (default n)")
        ->check(CLI::NonNegativeNumber);
    sample->add_option("--threads", opt.threads, "worker shards for histograms");
    sample->add_option("--seed", opt.seed, "stream seed")->required();
    CLI::App* continuous = app.add_subcommand("continuous", "sample the interval chain");
    add_common(continuous, false);
    continuous->add_option("--steps", opt.steps, "steps per trajectory")->check(CLI::PositiveNumber);
    continuous->add_option("--samples", opt.samples, "number of trajectories")
        ->check(CLI::PositiveNumber);
    continuous->add_option("--x0", opt.x0, "start point in [0,1]");
    continuous->add_option("--seed", opt.seed, "stream seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        opt.theta = parse_theta(opt.theta_text);
        opt.seed_set = sample->count("--seed") > 0 || continuous->count("--seed") > 0;
        if (matrix->parsed()) return run_matrix(opt);
        if (spectrum->parsed()) return run_spectrum(opt);
        if (verify->parsed()) return run_verify(opt);
        if (tv_curve->parsed()) return run_tv_curve(opt);
        if (sample->parsed()) return run_sample(opt);
        if (continuous->parsed()) return run_continuous(opt);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
