#include <clocale>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spinboost/cli.hpp"
#include "spinboost/version.hpp"

namespace {

void add_output_options(CLI::App* sub, spinboost::cli::RunConfig& config, std::string& format) {
    sub->add_option("-o,--output", config.output_path,
                    "Output file path (default: spinboost_<command>.<format>)");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void add_quadrature_options(CLI::App* sub, spinboost::cli::RunConfig& config) {
    sub->add_option("--n-radial", config.n_radial, "Radial quadrature nodes")
        ->capture_default_str();
    sub->add_option("--n-polar", config.n_polar, "Polar quadrature nodes")->capture_default_str();
    sub->add_option("--p-max", config.p_max,
                    "Radial cutoff in mass units (0 = 8 x max(sigma, 1))")
        ->capture_default_str();
}

void add_xi_grid_options(CLI::App* sub, spinboost::cli::RunConfig& config) {
    sub->add_option("--xi-min", config.xi_min, "Smallest rapidity")->capture_default_str();
    sub->add_option("--xi-max", config.xi_max, "Largest rapidity (at most 50)")
        ->capture_default_str();
    sub->add_option("--xi-steps", config.xi_steps, "Number of rapidity grid points (>= 2)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    spinboost::cli::RunConfig config;
    std::string format = "csv";

    CLI::App app{"Boost-induced spin decoherence for two-particle spin-1/2 states: "
                 "concurrence curves, saturation levels, the critical width-to-mass "
                 "ratio, the perpendicular-decay example, and a self-verification suite"};
    app.set_version_flag("--version", std::string(spinboost::kVersion));
    app.require_subcommand(1);

    auto* curve = app.add_subcommand(
        "curve", "Concurrence of a boosted Bell state against rapidity (CSV: xi,concurrence)");
    curve->add_option("--sigma-over-m", config.sigma_over_m, "Wavepacket width / mass")
        ->capture_default_str();
    add_xi_grid_options(curve, config);
    add_quadrature_options(curve, config);
    add_output_options(curve, config, format);
    curve->callback([&config] { config.command = spinboost::cli::Command::curve; });

    auto* saturation = app.add_subcommand(
        "saturation",
        "Limiting concurrence against sigma_over_m (CSV: sigma_over_m,c_inf)");
    saturation->add_option("--sigma-min", config.sigma_min, "Smallest width-to-mass ratio")
        ->capture_default_str();
    saturation->add_option("--sigma-max", config.sigma_max, "Largest width-to-mass ratio")
        ->capture_default_str();
    saturation->add_option("--sigma-steps", config.sigma_steps, "Number of ratio grid points")
        ->capture_default_str();
    add_quadrature_options(saturation, config);
    add_output_options(saturation, config, format);
    saturation->callback([&config] { config.command = spinboost::cli::Command::saturation; });

    auto* critical = app.add_subcommand(
        "critical", "Width-to-mass ratio where the limiting concurrence reaches zero");
    critical->add_option("--bracket-low", config.bracket_low,
                         "Ratio with a positive limiting concurrence")
        ->capture_default_str();
    critical->add_option("--bracket-high", config.bracket_high,
                         "Ratio with zero limiting concurrence")
        ->capture_default_str();
    add_quadrature_options(critical, config);
    add_output_options(critical, config, format);
    critical->callback([&config] { config.command = spinboost::cli::Command::critical; });

    auto* perp = app.add_subcommand(
        "perp",
        "Entanglement created by boosting the perpendicular-momentum decay state "
        "(CSV: p,xi,c_pipeline,c_closed_form)");
    perp->add_option("-p,--p", config.p, "Momentum magnitude in mass units")
        ->capture_default_str();
    add_xi_grid_options(perp, config);
    add_output_options(perp, config, format);
    perp->callback([&config] { config.command = spinboost::cli::Command::perp; });

    auto* verify = app.add_subcommand(
        "verify", "Run the full invariant suite and report each property");
    verify->add_option("--samples", config.samples, "Random product states to test")
        ->capture_default_str();
    verify->add_option("--seed", config.seed, "Randomness seed")->capture_default_str();
    verify
        ->add_flag("--inject-failure", config.inject_failure,
                   "Self-check: append a deliberately failing property")
        ->group("");
    add_quadrature_options(verify, config);
    add_output_options(verify, config, format);
    verify->callback([&config] { config.command = spinboost::cli::Command::verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    config.format = format == "json" ? spinboost::cli::OutputFormat::json
                                     : spinboost::cli::OutputFormat::csv;
    return spinboost::cli::run(config, std::cout, std::cerr);
}
