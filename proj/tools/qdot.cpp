// qdot: correlations of the vertical-quantum-dot thermal state from the command line.
//
//   qdot report --k0 10 --r 1 --T 0.4 [--channel dephasing --time 0.5]
//   qdot sweep  --vary r:0:5:11 --k0 10 --T 0.4 --out sweep.csv
//   qdot figure fig5 --out fig5.csv --svg fig5.svg
//   qdot plot   fig5.csv --out fig5.svg
//
// Exit codes: 0 success, 2 validation error, 1 computation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdot/qdot.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_computation = 1;
constexpr int exit_validation = 2;

ordered_json to_json(const qdot::CorrelationReport& rep) {
    ordered_json j;
    j["mutual_info"] = rep.mutual_info;
    j["classical"] = rep.classical;
    j["discord"] = rep.discord;
    j["discord_branch"] = qdot::to_string(rep.discord_branch);
    j["gamma_disc"] = rep.gamma_disc;
    j["lqu"] = rep.lqu;
    j["lambda1"] = rep.lambda1;
    j["lambda2"] = rep.lambda2;
    return j;
}

ordered_json to_json(const qdot::SweepTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < table.axis_names.size(); ++i) obj[table.axis_names[i]] = row.axis_values[i];
        for (std::size_t i = 0; i < table.measure_names.size(); ++i) obj[table.measure_names[i]] = row.measure_values[i];
        obj["discord_branch"] = qdot::to_string(row.branch);
        rows.push_back(std::move(obj));
    }
    ordered_json j;
    j["comments"] = table.comments;
    j["rows"] = std::move(rows);
    return j;
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw qdot::error("cannot open '" + path + "' for writing");
    file << text;
    file.flush();
    if (!file) throw qdot::error("write to '" + path + "' failed");
}

std::optional<qdot::ChannelKind> channel_from(const std::string& name) {
    if (name.empty()) return std::nullopt;
    auto kind = qdot::parse_channel(name);
    if (!kind) throw qdot::validation_error("--channel must be dephasing or amplitude");
    return kind;
}

std::vector<qdot::Measure> measures_from(const std::string& list) {
    std::vector<qdot::Measure> out;
    for (const auto& name : qdot::split(list, ',')) {
        const auto m = qdot::parse_measure(qdot::trim(name));
        if (!m) throw qdot::validation_error("unknown measure '" + qdot::trim(name) + "'");
        out.push_back(*m);
    }
    return out;
}

std::string table_text(const qdot::SweepTable& table, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << to_json(table).dump(2) << '\n';
    } else {
        qdot::emit_csv(table, os);
    }
    return os.str();
}

struct ReportArgs {
    double k0 = 10.0, r = 1.0, T = 0.4;
    std::string channel;
    double decay_rate = 1.0;
    double time = 0.0;
    std::string method = "closed";
    std::string format = "json";
    std::string out;
};

int run_report(const ReportArgs& a) {
    const qdot::DotParams params{a.k0, a.r, a.T};
    const auto kind = channel_from(a.channel);
    qdot::CorrelationReport rep;
    if (a.method == "closed") {
        qdot::SymXState state = qdot::thermal_state_closed(params);
        if (kind) state = qdot::evolve_xstate(state, *kind, qdot::gamma_from_rate(a.decay_rate, a.time));
        rep = qdot::full_report(state);
    } else {
        qdot::TwoQubitState rho = qdot::thermal_state_oracle(params);
        if (kind) rho = qdot::evolve(rho, qdot::ChannelSpec{*kind, a.decay_rate, a.time});
        rep = qdot::full_report(rho);
    }
    std::ostringstream os;
    if (a.format == "json") {
        os << to_json(rep).dump(2) << '\n';
    } else {
        os << "mutual_info,classical,discord,discord_branch,gamma_disc,lqu,lambda1,lambda2\n"
           << qdot::format_real(rep.mutual_info) << ',' << qdot::format_real(rep.classical) << ','
           << qdot::format_real(rep.discord) << ',' << qdot::to_string(rep.discord_branch) << ','
           << qdot::format_real(rep.gamma_disc) << ',' << qdot::format_real(rep.lqu) << ','
           << qdot::format_real(rep.lambda1) << ',' << qdot::format_real(rep.lambda2) << '\n';
    }
    write_text(os.str(), a.out);
    return exit_ok;
}

struct SweepArgs {
    std::string config;
    std::vector<std::string> vary;
    std::optional<double> k0, r, T;
    std::string channel;
    std::optional<double> decay_rate, time_max;
    int steps = 0;
    std::string measures;
    std::string format = "csv";
    std::string out, svg;
};

int run_sweep_command(const SweepArgs& a) {
    qdot::SweepSpec spec;
    if (!a.config.empty()) {
        std::ifstream file(a.config);
        if (!file) throw qdot::validation_error("cannot read config '" + a.config + "'");
        spec = qdot::parse_config(file);
    }
    for (const auto& text : a.vary) spec.axes.push_back(qdot::parse_axis(text));
    if (a.k0) spec.fixed.k0 = *a.k0;
    if (a.r) spec.fixed.r = *a.r;
    if (a.T) spec.fixed.T = *a.T;
    if (const auto kind = channel_from(a.channel)) spec.channel = kind;
    if (a.decay_rate) spec.decay_rate = *a.decay_rate;
    if (!a.measures.empty()) spec.measures = measures_from(a.measures);
    if (a.time_max) {
        if (!spec.channel) throw qdot::validation_error("--time-max requires --channel");
        const bool has_time_axis = std::any_of(spec.axes.begin(), spec.axes.end(),
                                               [](const qdot::Axis& ax) { return ax.name == qdot::AxisName::gamma_t; });
        if (has_time_axis) throw qdot::validation_error("--time-max conflicts with an explicit gamma_t axis");
        spec.axes.push_back(qdot::range_axis(qdot::AxisName::gamma_t, 0.0, spec.decay_rate * *a.time_max, 0));
    }
    if (a.steps != 0) {
        for (auto& axis : spec.axes)
            if (axis.explicit_values.empty() && axis.steps == 0) axis.steps = a.steps;
    }
    const qdot::SweepTable table = qdot::run_sweep(spec);
    write_text(table_text(table, a.format), a.out);
    if (!a.svg.empty()) qdot::render_svg(table, a.svg);
    return exit_ok;
}

int run_figure(const std::string& id, const std::string& format, const std::string& out, const std::string& svg) {
    const auto fig = qdot::parse_figure(id);
    if (!fig) throw qdot::validation_error("unknown figure '" + id + "' (expected fig1..fig6)");
    const qdot::SweepTable table = qdot::run_sweep(qdot::figure_preset(*fig));
    write_text(table_text(table, format), out);
    if (!svg.empty()) qdot::render_svg(table, svg);
    return exit_ok;
}

int run_plot(const std::string& input, const std::string& out) {
    std::ifstream file(input);
    if (!file) throw qdot::validation_error("cannot read CSV '" + input + "'");
    const qdot::SweepTable table = qdot::read_csv(file);
    std::ostringstream os;
    qdot::render_svg(table, os);
    write_text(os.str(), out);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum discord and local quantum uncertainty of a two-electron vertical quantum dot"};
    app.require_subcommand(1);
    const auto formats = CLI::IsMember({"csv", "json"});
    const auto channels = CLI::IsMember({"dephasing", "amplitude"});

    ReportArgs report;
    auto* report_cmd = app.add_subcommand("report", "Correlation report for one (k0, r, T) point as JSON");
    report_cmd->add_option("--k0", report.k0, "Bare exchange value k0")->capture_default_str();
    report_cmd->add_option("--r", report.r, "Zeeman energy r")->capture_default_str();
    report_cmd->add_option("--T", report.T, "Temperature (> 0)")->capture_default_str();
    report_cmd->add_option("--channel", report.channel, "Apply a channel before measuring")->check(channels);
    report_cmd->add_option("--decay-rate", report.decay_rate, "Channel decay rate")->capture_default_str();
    report_cmd->add_option("--time", report.time, "Channel exposure time")->capture_default_str();
    report_cmd->add_option("--method", report.method, "closed (closed forms) or oracle (brute force)")
        ->check(CLI::IsMember({"closed", "oracle"}))
        ->capture_default_str();
    report_cmd->add_option("--format", report.format, "Output format")->check(formats)->capture_default_str();
    report_cmd->add_option("--out", report.out, "Output path (default: standard output)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one or two parameters");
    sweep_cmd->add_option("--config", sweep.config, "Flat key = value sweep file");
    sweep_cmd->add_option("--vary", sweep.vary, "Axis name:start:stop[:steps] or name:v1,v2,... (k0, r, T, gamma_t)");
    sweep_cmd->add_option("--k0", sweep.k0, "Fixed k0");
    sweep_cmd->add_option("--r", sweep.r, "Fixed r");
    sweep_cmd->add_option("--T", sweep.T, "Fixed temperature");
    sweep_cmd->add_option("--channel", sweep.channel, "Channel applied at each point")->check(channels);
    sweep_cmd->add_option("--decay-rate", sweep.decay_rate, "Channel decay rate");
    sweep_cmd->add_option("--time-max", sweep.time_max, "Adds a gamma_t axis over [0, decay_rate * time_max]");
    sweep_cmd->add_option("--steps", sweep.steps, "Steps for axes without an explicit count")
        ->check(CLI::Range(2, 1000000));
    sweep_cmd->add_option("--measures", sweep.measures, "Comma list of discord, lqu, mutual_info, classical");
    sweep_cmd->add_option("--format", sweep.format, "Output format")->check(formats)->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out, "Output path (default: standard output)");
    sweep_cmd->add_option("--svg", sweep.svg, "Also render an SVG plot to this path");

    std::string figure_id, figure_format = "csv", figure_out, figure_svg;
    auto* figure_cmd = app.add_subcommand("figure", "Run a figure preset (fig1..fig6)");
    figure_cmd->add_option("id", figure_id, "fig1..fig6")->required();
    figure_cmd->add_option("--format", figure_format, "Output format")->check(formats)->capture_default_str();
    figure_cmd->add_option("--out", figure_out, "Output path (default: standard output)");
    figure_cmd->add_option("--svg", figure_svg, "Also render an SVG plot to this path");

    std::string plot_in, plot_out;
    auto* plot_cmd = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    plot_cmd->add_option("csv", plot_in, "Input CSV")->required();
    plot_cmd->add_option("--out", plot_out, "Output SVG path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_validation;
    }

    try {
        if (*report_cmd) return run_report(report);
        if (*sweep_cmd) return run_sweep_command(sweep);
        if (*figure_cmd) return run_figure(figure_id, figure_format, figure_out, figure_svg);
        if (*plot_cmd) return run_plot(plot_in, plot_out);
    } catch (const qdot::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_computation;
    }
    return exit_validation;
}
