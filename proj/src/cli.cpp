#include "spinboost/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "spinboost/continuum.hpp"
#include "spinboost/discrete.hpp"
#include "spinboost/errors.hpp"
#include "spinboost/kinematics.hpp"
#include "spinboost/spin_algebra.hpp"
#include "spinboost/version.hpp"

namespace spinboost::cli {

namespace {

using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

continuum::QuadratureSpec quad_for(const RunConfig& config, double largest_sigma) {
    continuum::QuadratureSpec quad;
    quad.n_radial = config.n_radial;
    quad.n_polar = config.n_polar;
    quad.p_max = config.p_max > 0.0 ? config.p_max : 8.0 * std::max(largest_sigma, 1.0);
    return quad;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::domain_error("output_path cannot be opened for writing: " + path);
    }
    file << content;
    file.flush();
    if (!file) {
        throw std::domain_error("output_path write failed: " + path);
    }
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << '\n';
    }
    return out.str();
}

json config_json(const RunConfig& c) {
    return json{
        {"bracket_high", c.bracket_high},
        {"bracket_low", c.bracket_low},
        {"command", to_string(c.command)},
        {"format", to_string(c.format)},
        {"inject_failure", c.inject_failure},
        {"n_polar", c.n_polar},
        {"n_radial", c.n_radial},
        {"output_path", c.resolved_output_path()},
        {"p", c.p},
        {"p_max", c.p_max},
        {"samples", c.samples},
        {"seed", c.seed},
        {"sigma_max", c.sigma_max},
        {"sigma_min", c.sigma_min},
        {"sigma_over_m", c.sigma_over_m},
        {"sigma_steps", c.sigma_steps},
        {"xi_max", c.xi_max},
        {"xi_min", c.xi_min},
        {"xi_steps", c.xi_steps},
    };
}

std::string json_document(const RunConfig& c, json rows, json summary) {
    const json doc{
        {"config", config_json(c)},
        {"rows", std::move(rows)},
        {"summary", std::move(summary)},
        {"versions", {{"output_schema", kOutputSchemaVersion}, {"spinboost", kVersion}}},
    };
    return doc.dump(2) + "\n";
}

void write_output(const RunConfig& config, const std::vector<std::string>& columns,
                  const std::vector<std::vector<std::string>>& csv_rows, const json& json_rows,
                  const json& summary) {
    const std::string path = config.resolved_output_path();
    if (config.format == OutputFormat::csv) {
        write_text_file(path, csv_table(columns, csv_rows));
    } else {
        write_text_file(path, json_document(config, json_rows, summary));
    }
}

int run_curve(const RunConfig& config, std::ostream& out) {
    const auto quad = quad_for(config, config.sigma_over_m);
    const auto grid = linear_grid(config.xi_min, config.xi_max, config.xi_steps);
    const auto curve = continuum::concurrence_curve(config.sigma_over_m, grid, quad);
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (const auto& [xi, c] : curve) {
        rows.push_back({format_number(xi), format_number(c)});
        jrows.push_back({{"concurrence", c}, {"xi", xi}});
    }
    const json summary{
        {"initial_concurrence", curve.front().second},
        {"plateau_concurrence", curve.back().second},
        {"row_count", static_cast<int>(curve.size())},
    };
    write_output(config, {"xi", "concurrence"}, rows, jrows, summary);
    out << "curve sigma_over_m=" << format_number(config.sigma_over_m) << ": initial concurrence "
        << format_number(curve.front().second) << ", plateau "
        << format_number(curve.back().second) << ", " << curve.size() << " rows -> "
        << config.resolved_output_path() << '\n';
    return 0;
}

int run_saturation(const RunConfig& config, std::ostream& out) {
    const auto grid = config.sigma_steps == 1
                          ? std::vector<double>{config.sigma_min}
                          : linear_grid(config.sigma_min, config.sigma_max, config.sigma_steps);
    const auto quad = quad_for(config, grid.back());
    std::vector<std::vector<std::string>> rows;
    std::vector<double> levels;
    json jrows = json::array();
    for (const double sigma : grid) {
        const double c_inf = continuum::saturation_level(sigma, quad);
        levels.push_back(c_inf);
        rows.push_back({format_number(sigma), format_number(c_inf)});
        jrows.push_back({{"c_inf", c_inf}, {"sigma_over_m", sigma}});
    }
    const json summary{
        {"c_inf_at_sigma_max", levels.back()},
        {"c_inf_at_sigma_min", levels.front()},
        {"row_count", static_cast<int>(grid.size())},
    };
    write_output(config, {"sigma_over_m", "c_inf"}, rows, jrows, summary);
    out << "saturation: c_inf(" << format_number(grid.front())
        << ")=" << format_number(levels.front()) << ", c_inf(" << format_number(grid.back())
        << ")=" << format_number(levels.back()) << ", " << grid.size() << " rows -> "
        << config.resolved_output_path() << '\n';
    return 0;
}

int run_critical(const RunConfig& config, std::ostream& out) {
    const auto quad = quad_for(config, config.bracket_high);
    const double ratio = continuum::critical_ratio(quad, config.bracket_low, config.bracket_high);
    const std::vector<std::vector<std::string>> rows{{format_number(config.bracket_low),
                                                      format_number(config.bracket_high),
                                                      format_number(ratio)}};
    const json jrows = json::array({{{"bracket_high", config.bracket_high},
                                     {"bracket_low", config.bracket_low},
                                     {"critical_ratio", ratio}}});
    const json summary{{"critical_ratio", ratio}};
    write_output(config, {"bracket_low", "bracket_high", "critical_ratio"}, rows, jrows, summary);
    char rounded[32];
    std::snprintf(rounded, sizeof(rounded), "%.3f", ratio);
    out << "critical sigma_r/m ratio: " << rounded << " (bracket ["
        << format_number(config.bracket_low) << ", " << format_number(config.bracket_high)
        << "]) -> " << config.resolved_output_path() << '\n';
    return 0;
}

int run_perp(const RunConfig& config, std::ostream& out) {
    const auto grid = linear_grid(config.xi_min, config.xi_max, config.xi_steps);
    const auto state = discrete::perpendicular_decay_state(config.p, 1.0);
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    double max_discrepancy = 0.0;
    for (const double xi : grid) {
        const auto boosted = discrete::apply_boost(state, kinematics::Rapidity(xi));
        const double c_pipeline =
            spin_algebra::concurrence(discrete::reduced_spin_density(boosted));
        const double c_closed = discrete::perp_concurrence_closed_form(config.p, xi);
        max_discrepancy = std::max(max_discrepancy, std::abs(c_pipeline - c_closed));
        rows.push_back({format_number(config.p), format_number(xi), format_number(c_pipeline),
                        format_number(c_closed)});
        jrows.push_back({{"c_closed_form", c_closed},
                         {"c_pipeline", c_pipeline},
                         {"p", config.p},
                         {"xi", xi}});
    }
    if (!(max_discrepancy < 1e-9)) {
        throw numerical_error("boosted-state concurrence deviates from the closed form by " +
                              format_number(max_discrepancy));
    }
    const json summary{
        {"final_concurrence", jrows.back()["c_pipeline"]},
        {"max_discrepancy", max_discrepancy},
        {"row_count", static_cast<int>(grid.size())},
    };
    write_output(config, {"p", "xi", "c_pipeline", "c_closed_form"}, rows, jrows, summary);
    out << "perp p=" << format_number(config.p) << ": max |pipeline - closed form| = "
        << format_number(max_discrepancy) << ", " << grid.size() << " rows -> "
        << config.resolved_output_path() << '\n';
    return 0;
}

struct PropertyResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

PropertyResult make_result(std::string name, double deviation, double tolerance) {
    PropertyResult r;
    r.name = std::move(name);
    r.max_deviation = deviation;
    r.tolerance = tolerance;
    r.passed = deviation <= tolerance;
    return r;
}

PropertyResult check_rotation_unitarity() {
    const std::vector<double> momenta{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    const std::vector<double> cosines{-0.99, -0.5, 0.0, 0.5, 0.99};
    const std::vector<double> rapidities{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    double dev = 0.0;
    for (const double p : momenta) {
        for (const double c : cosines) {
            const kinematics::PolarMomentum q(p, 0.0, std::acos(c), 1.0);
            for (const double xi : rapidities) {
                dev = std::max(
                    dev, kinematics::wigner_rotation(q, kinematics::Rapidity(xi)).unitarity_defect());
            }
            dev = std::max(dev, kinematics::wigner_limit(q).unitarity_defect());
        }
    }
    return make_result("rotation-unitarity", dev, 1e-12);
}

PropertyResult check_boost_mass_preservation() {
    const std::vector<double> components{0.0, 0.5, -2.0, 5.0};
    const std::vector<double> rapidities{0.0, 1.0, 5.0, 20.0, -20.0};
    double dev = 0.0;
    for (const double px : components) {
        for (const double py : components) {
            for (const double pz : components) {
                const auto p = kinematics::FourMomentum::from_mass_momentum(1.0, {px, py, pz});
                for (const double xi : rapidities) {
                    const auto boosted = kinematics::boost(p, kinematics::Rapidity(xi));
                    dev = std::max(dev, std::abs(boosted.mass() - 1.0));
                }
            }
        }
    }
    return make_result("boost-mass-preservation", dev, 1e-12);
}

std::vector<continuum::SpinChannel> reference_channels(const RunConfig& config) {
    std::vector<continuum::SpinChannel> channels;
    for (const double sigma : {1.0, 4.0}) {
        const auto quad = quad_for(config, sigma);
        const continuum::MomentumWavepacket pkt(sigma, 1.0, quad);
        for (const double xi : {0.0, 1.0, 2.0, 5.0}) {
            channels.push_back(continuum::spin_channel(pkt, kinematics::Rapidity(xi), quad));
        }
        channels.push_back(continuum::spin_channel_limit(pkt, quad));
    }
    return channels;
}

PropertyResult check_trace_preservation(const std::vector<continuum::SpinChannel>& channels) {
    double dev = 0.0;
    for (const auto& channel : channels) {
        dev = std::max(dev, channel.trace_preservation_defect());
    }
    return make_result("channel-trace-preservation", dev, 1e-8);
}

PropertyResult check_complete_positivity(const std::vector<continuum::SpinChannel>& channels) {
    double dev = 0.0;
    for (const auto& channel : channels) {
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(channel.choi_matrix());
        if (solver.info() != Eigen::Success) {
            throw numerical_error("eigenvalue solver failed on a Choi matrix");
        }
        dev = std::max(dev, std::max(0.0, -solver.eigenvalues().minCoeff()));
    }
    return make_result("channel-complete-positivity", dev, 1e-8);
}

int run_verify(const RunConfig& config, std::ostream& out) {
    std::vector<PropertyResult> results;
    results.push_back(check_rotation_unitarity());
    results.push_back(check_boost_mass_preservation());

    const auto channels = reference_channels(config);
    results.push_back(check_trace_preservation(channels));
    results.push_back(check_complete_positivity(channels));

    const auto quad = quad_for(config, 1.0);
    const auto curve = continuum::concurrence_curve(
        1.0, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0}, quad);
    results.push_back(make_result("curve-initial-value",
                                  std::abs(curve.front().second - 1.0), 1e-6));
    double worst_step = 0.0;
    for (std::size_t k = 1; k < curve.size(); ++k) {
        worst_step = std::max(worst_step, curve[k].second - curve[k - 1].second);
    }
    results.push_back(make_result("curve-monotonicity", std::max(worst_step, 0.0), 1e-8));

    {
        const continuum::MomentumWavepacket pkt(1.0, 1.0, quad);
        const spin_algebra::DensityMatrix4 bell(
            spin_algebra::bell_state(spin_algebra::BellKind::phi_plus));
        const double at_40 = spin_algebra::concurrence(
            continuum::boosted_spin_density(bell, pkt, kinematics::Rapidity(40.0), quad));
        const double level = continuum::saturation_level(1.0, quad);
        results.push_back(make_result("saturation-consistency", std::abs(level - at_40), 1e-6));
    }

    {
        const auto report = discrete::verify_monotonicity_theorem(config.samples, config.seed);
        PropertyResult r;
        r.name = "spin-concurrence-monotonicity";
        r.max_deviation = report.max_increase;
        r.tolerance = report.tolerance;
        r.passed = report.passed;
        results.push_back(r);
        if (!report.passed) {
            out << "concurrence increase found; reproduce with sample seed "
                << report.worst_sample_seed << '\n';
        }
    }

    {
        double dev = 0.0;
        for (int k = 0; k < 10; ++k) {
            const auto state = discrete::random_state(config.seed + 1000 + k);
            const double before = discrete::joint_entanglement_entropy(state);
            for (const double xi : {1.0, 10.0, 20.0}) {
                const double after = discrete::joint_entanglement_entropy(
                    discrete::apply_boost(state, kinematics::Rapidity(xi)));
                dev = std::max(dev, std::abs(after - before));
            }
        }
        results.push_back(make_result("joint-entropy-invariance", dev, 1e-10));
    }

    {
        double dev = 0.0;
        for (int k = 0; k < 10; ++k) {
            const auto state = discrete::random_state(config.seed + 2000 + k);
            for (const double xi : {0.5, 2.0, 5.0}) {
                const kinematics::Rapidity forward(xi);
                const auto round_trip =
                    discrete::apply_boost(discrete::apply_boost(state, forward), forward.inverse());
                dev = std::max(dev, (round_trip.amplitudes() - state.amplitudes())
                                        .cwiseAbs()
                                        .maxCoeff());
                for (int i = 0; i < state.n_modes_a(); ++i) {
                    const auto a = state.mode_a(i).momentum().spatial();
                    const auto b = round_trip.mode_a(i).momentum().spatial();
                    const double scale = 1.0 + a.norm();
                    dev = std::max({dev, std::abs(a.x - b.x) / scale, std::abs(a.y - b.y) / scale,
                                    std::abs(a.z - b.z) / scale});
                }
            }
        }
        results.push_back(make_result("boost-reversibility", dev, 1e-10));
    }

    {
        double dev = 0.0;
        for (const double p : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const auto state = discrete::perpendicular_decay_state(p, 1.0);
            for (const double xi : {0.5, 1.0, 2.0, 4.0, 8.0}) {
                const auto boosted = discrete::apply_boost(state, kinematics::Rapidity(xi));
                const double pipeline =
                    spin_algebra::concurrence(discrete::reduced_spin_density(boosted));
                dev = std::max(dev,
                               std::abs(pipeline - discrete::perp_concurrence_closed_form(p, xi)));
            }
        }
        results.push_back(make_result("perp-closed-form-match", dev, 1e-10));
    }

    if (config.inject_failure) {
        results.push_back(make_result("injected-failure", 1.0, 0.0));
    }

    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    int failures = 0;
    for (const auto& r : results) {
        failures += r.passed ? 0 : 1;
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": max deviation "
            << format_number(r.max_deviation) << " (tolerance " << format_number(r.tolerance)
            << ")\n";
        rows.push_back({r.name, format_number(r.max_deviation), format_number(r.tolerance),
                        r.passed ? "1" : "0"});
        jrows.push_back({{"max_deviation", r.max_deviation},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"tolerance", r.tolerance}});
    }
    const json summary{
        {"all_passed", failures == 0},
        {"failures", failures},
        {"properties", static_cast<int>(results.size())},
        {"samples", config.samples},
        {"seed", config.seed},
    };
    write_output(config, {"property", "max_deviation", "tolerance", "passed"}, rows, jrows,
                 summary);
    if (failures == 0) {
        out << "verification PASSED (" << results.size() << " properties) -> "
            << config.resolved_output_path() << '\n';
        return 0;
    }
    out << "verification FAILED (" << failures << " of " << results.size()
        << " properties) -> " << config.resolved_output_path() << '\n';
    return 1;
}

}  // namespace

void RunConfig::validate() const {
    if (!(sigma_over_m > 0.0)) {
        throw std::domain_error("sigma_over_m must be positive");
    }
    if (xi_steps < 2) {
        throw std::domain_error("xi_steps must be at least 2");
    }
    if (xi_min < 0.0) {
        throw std::domain_error("xi_min must be non-negative");
    }
    if (!(xi_min < xi_max)) {
        throw std::domain_error("xi_min must be less than xi_max");
    }
    if (xi_max > 50.0) {
        throw std::domain_error("xi_max must not exceed 50");
    }
    if (sigma_steps < 1) {
        throw std::domain_error("sigma_steps must be at least 1");
    }
    if (!(sigma_min > 0.0)) {
        throw std::domain_error("sigma_min must be positive");
    }
    if (sigma_steps > 1 && !(sigma_min < sigma_max)) {
        throw std::domain_error("sigma_min must be less than sigma_max");
    }
    if (!(p > 0.0)) {
        throw std::domain_error("p must be positive");
    }
    if (!(bracket_low > 0.0) || !(bracket_low < bracket_high)) {
        throw std::domain_error("bracket_low must be positive and less than bracket_high");
    }
    if (n_radial < 8) {
        throw std::domain_error("n_radial must be at least 8");
    }
    if (n_polar < 8) {
        throw std::domain_error("n_polar must be at least 8");
    }
    if (p_max < 0.0) {
        throw std::domain_error("p_max must be positive (or 0 for the derived default)");
    }
    if (samples < 1) {
        throw std::domain_error("samples must be at least 1");
    }
}

std::string RunConfig::resolved_output_path() const {
    if (!output_path.empty()) {
        return output_path;
    }
    return "spinboost_" + to_string(command) +
           (format == OutputFormat::csv ? ".csv" : ".json");
}

std::string to_string(Command command) {
    switch (command) {
        case Command::curve:
            return "curve";
        case Command::saturation:
            return "saturation";
        case Command::critical:
            return "critical";
        case Command::perp:
            return "perp";
        case Command::verify:
            return "verify";
    }
    return "unknown";
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        switch (config.command) {
            case Command::curve:
                return run_curve(config, out);
            case Command::saturation:
                return run_saturation(config, out);
            case Command::critical:
                return run_critical(config, out);
            case Command::perp:
                return run_perp(config, out);
            case Command::verify:
                return run_verify(config, out);
        }
        err << "error: unknown command\n";
        return 2;
    } catch (const numerical_error& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace spinboost::cli
