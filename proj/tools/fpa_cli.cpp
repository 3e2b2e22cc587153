// fpa: exact moments, closed forms and Monte Carlo for the first-passage time and
// area of Brownian motion with drift.

#include "fpa/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

namespace {

using fpa::cli::Format;

const std::map<std::string, Format> kFormats = {{"text", Format::text}, {"csv", Format::csv}};

void add_simulation_flags(CLI::App* cmd, fpa::cli::SimulationFlags& sim, bool with_switch) {
    if (with_switch) cmd->add_flag("--simulate", sim.simulate, "Also run the Monte Carlo estimate");
    cmd->add_option("--paths", sim.paths, "Number of simulated paths")->check(CLI::PositiveNumber);
    cmd->add_option("--dt", sim.dt, "Time step")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", sim.seed, "Random seed");
    cmd->add_flag("--no-bridge", sim.no_bridge, "Disable the Brownian-bridge crossing correction");
    cmd->add_option("--max-time", sim.max_time, "Censoring horizon (default 50 x / mu)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
}

/// Output stream for --out, or stdout when empty.
class Destination {
public:
    explicit Destination(const std::string& path) {
        if (!path.empty()) file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    }
    [[nodiscard]] bool ok() const { return !file_ || file_->good(); }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"First-passage time and area of drifted Brownian motion"};
    app.require_subcommand(1);
    std::string out_path;
    Format format = Format::text;

    auto* moment = app.add_subcommand("moment", "Exact joint moment E[tau^m A^n] as a polynomial in x and mu");
    fpa::cli::MomentArgs moment_args;
    std::string solver = "back";
    moment->add_option("--m", moment_args.m, "Power of tau")->required()->check(CLI::NonNegativeNumber);
    moment->add_option("--n", moment_args.n, "Power of A")->required()->check(CLI::NonNegativeNumber);
    moment->add_option("--x", moment_args.x, "Evaluate at this starting level");
    moment->add_option("--mu", moment_args.mu, "Evaluate at this drift");
    moment->add_option("--solver", solver, "back (back-substitution) or inverse (explicit inverse)")
        ->check(CLI::IsMember({"back", "inverse"}));

    auto* correlation = app.add_subcommand("correlation", "Exact (and simulated) correlation of tau and A");
    fpa::cli::CorrelationArgs corr_args;
    corr_args.sim.seed = 42;
    correlation->add_option("--x", corr_args.x, "Starting level")->required()->check(CLI::PositiveNumber);
    correlation->add_option("--mu-list", corr_args.mu_list, "Comma-separated drifts")
        ->required()
        ->delimiter(',');
    add_simulation_flags(correlation, corr_args.sim, true);

    auto* simulate = app.add_subcommand("simulate", "Dump simulated (tau, A) samples as CSV");
    fpa::cli::SimulateArgs sim_args;
    simulate->add_option("--x", sim_args.x, "Starting level")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--mu", sim_args.mu, "Drift")->required()->check(CLI::NonNegativeNumber);
    add_simulation_flags(simulate, sim_args.sim, false);

    auto* density = app.add_subcommand("density", "Histogram density of A as CSV");
    fpa::cli::DensityArgs density_args;
    bool figure1 = false;
    density->add_option("--x", density_args.x, "Starting level")->check(CLI::PositiveNumber);
    density->add_option("--mu", density_args.mu, "Drift")->check(CLI::PositiveNumber);
    density->add_option("--bins", density_args.bins, "Histogram bins")->check(CLI::Range(2, 1 << 24));
    density->add_option("--range-max", density_args.range_max, "Upper histogram edge (default: 99.5th percentile)");
    density->add_flag("--figure1", figure1, "x = 1 with mu in {1,1.1,1.2,1.3,1.5,2,3}; --out is a directory");
    add_simulation_flags(density, density_args.sim, false);

    auto* time_avg = app.add_subcommand("time-average", "E[A / tau] by quadrature (and simulation)");
    fpa::cli::TimeAverageArgs ta_args;
    time_avg->add_option("--x", ta_args.x, "Starting level")->required()->check(CLI::PositiveNumber);
    time_avg->add_option("--mu", ta_args.mu, "Drift")->required()->check(CLI::PositiveNumber);
    add_simulation_flags(time_avg, ta_args.sim, true);

    for (auto* cmd : {moment, correlation, simulate, density, time_avg}) {
        cmd->add_option("--out", out_path, "Output file (default: standard output)");
    }
    for (auto* cmd : {moment, correlation, time_avg}) {
        cmd->add_option("--format", format, "text or csv")
            ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return fpa::cli::kExitUsage;
    }

    if (density->parsed() && figure1) {
        return fpa::cli::cmd_density_figure1(density_args, out_path.empty() ? "." : out_path, std::cout,
                                             std::cerr);
    }

    Destination dest(out_path);
    if (!dest.ok()) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return fpa::cli::kExitUsage;
    }
    std::ostream& out = dest.stream();

    try {
        if (moment->parsed()) {
            moment_args.format = format;
            moment_args.solver = solver == "inverse" ? fpa::Solver::explicit_inverse : fpa::Solver::back_substitution;
            return fpa::cli::cmd_moment(moment_args, out, std::cerr);
        }
        if (correlation->parsed()) {
            corr_args.format = correlation->count("--format") ? format : Format::csv;
            return fpa::cli::cmd_correlation(corr_args, out, std::cerr);
        }
        if (simulate->parsed()) return fpa::cli::cmd_simulate(sim_args, out, std::cerr);
        if (density->parsed()) return fpa::cli::cmd_density(density_args, out, std::cerr);
        if (time_avg->parsed()) {
            ta_args.format = format;
            return fpa::cli::cmd_time_average(ta_args, out, std::cerr);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fpa::cli::kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fpa::cli::kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fpa::cli::kExitQuality;
    }
    return fpa::cli::kExitUsage;
}
