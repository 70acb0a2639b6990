#pragma once

// Parameter sweeps over (k0, r, T, gamma_t), figure presets and the CSV format.
//
// CSV layout: optional "# " comment lines, one header line, then data rows.
// Fields are ',' separated, lines end in '\n', reals are printed with 12
// significant digits through std::to_chars (locale independent).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qdot/channels.hpp"
#include "qdot/correlations.hpp"
#include "qdot/dot_model.hpp"
#include "qdot/error.hpp"

namespace qdot {

enum class AxisName { k0, r, T, gamma_t };
enum class Measure { discord, lqu, mutual_info, classical };

inline const char* to_string(AxisName a) {
    switch (a) {
        case AxisName::k0: return "k0";
        case AxisName::r: return "r";
        case AxisName::T: return "T";
        case AxisName::gamma_t: return "gamma_t";
    }
    return "?";
}

inline const char* to_string(Measure m) {
    switch (m) {
        case Measure::discord: return "discord";
        case Measure::lqu: return "lqu";
        case Measure::mutual_info: return "mutual_info";
        case Measure::classical: return "classical";
    }
    return "?";
}

inline std::optional<AxisName> parse_axis_name(std::string_view s) {
    for (AxisName a : {AxisName::k0, AxisName::r, AxisName::T, AxisName::gamma_t})
        if (s == to_string(a)) return a;
    return std::nullopt;
}

inline std::optional<Measure> parse_measure(std::string_view s) {
    for (Measure m : {Measure::discord, Measure::lqu, Measure::mutual_info, Measure::classical})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

inline std::optional<ChannelKind> parse_channel(std::string_view s) {
    if (s == "dephasing") return ChannelKind::Dephasing;
    if (s == "amplitude") return ChannelKind::AmplitudeDamping;
    return std::nullopt;
}

inline std::optional<DiscordBranch> parse_branch(std::string_view s) {
    if (s == "D1") return DiscordBranch::D1;
    if (s == "D2") return DiscordBranch::D2;
    return std::nullopt;
}

/// 12 significant digits, '.' decimal point, no locale.
inline std::string format_real(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline double parse_real(std::string_view s, std::string_view what) {
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || s.empty()) {
        throw validation_error("cannot parse " + std::string(what) + " value '" + std::string(s) + "'");
    }
    return value;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        out.emplace_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

/// One varying parameter: either an evenly spaced range or an explicit value list.
struct Axis {
    AxisName name = AxisName::r;
    double start = 0.0;
    double stop = 1.0;
    int steps = 0;  // 0: use the sweep default
    std::vector<double> explicit_values;

    std::vector<double> values() const {
        if (!explicit_values.empty()) return explicit_values;
        std::vector<double> out(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i) out[i] = start + (stop - start) * double(i) / double(steps - 1);
        out.back() = stop;
        return out;
    }

    std::size_t size() const { return explicit_values.empty() ? std::size_t(steps) : explicit_values.size(); }
};

/// "name:start:stop[:steps]" or "name:v1,v2,...".
inline Axis parse_axis(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 4) {
        throw validation_error("axis '" + std::string(text) + "' must be name:start:stop[:steps] or name:v1,v2,...");
    }
    Axis axis;
    const auto name = parse_axis_name(trim(parts[0]));
    if (!name) throw validation_error("unknown axis name '" + parts[0] + "' (expected k0, r, T or gamma_t)");
    axis.name = *name;
    if (parts.size() == 2) {
        for (const auto& item : split(parts[1], ',')) axis.explicit_values.push_back(parse_real(trim(item), "axis"));
        return axis;
    }
    if (parts.size() == 3 && parts[1].find(',') != std::string::npos) {
        throw validation_error("axis '" + std::string(text) + "': value lists take the form name:v1,v2,...");
    }
    axis.start = parse_real(trim(parts[1]), "axis start");
    axis.stop = parse_real(trim(parts[2]), "axis stop");
    if (parts.size() == 4) {
        const double steps = parse_real(trim(parts[3]), "axis steps");
        if (steps != std::floor(steps) || steps < 0 || steps > 1e6) {
            throw validation_error("axis steps must be a non-negative integer");
        }
        axis.steps = static_cast<int>(steps);
    }
    return axis;
}

struct SweepSpec {
    std::vector<Axis> axes;  // one or two; the first is the outer loop
    DotParams fixed{10.0, 1.0, 0.4};
    double fixed_gamma_t = 0.0;  // channel exposure Gamma*t when gamma_t is not swept
    std::optional<ChannelKind> channel;
    double decay_rate = 1.0;  // recorded only; gamma_t already folds in the rate
    std::vector<Measure> measures{Measure::discord, Measure::lqu};
    std::vector<std::string> notes;  // emitted as CSV comment lines
};

inline constexpr int default_steps_1d = 101;
inline constexpr int default_steps_2d = 51;

/// Fills unset step counts and checks the spec. Throws validation_error.
inline SweepSpec validated(SweepSpec spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) throw validation_error("a sweep needs one or two axes");
    if (spec.measures.empty()) throw validation_error("a sweep needs at least one measure");
    for (std::size_t i = 0; i < spec.measures.size(); ++i)
        for (std::size_t j = i + 1; j < spec.measures.size(); ++j)
            if (spec.measures[i] == spec.measures[j])
                throw validation_error(std::string("measure listed twice: ") + to_string(spec.measures[i]));
    if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
        throw validation_error(std::string("axis names must be unique: ") + to_string(spec.axes[0].name));
    }
    const int default_steps = spec.axes.size() == 1 ? default_steps_1d : default_steps_2d;
    for (auto& axis : spec.axes) {
        const std::string name = to_string(axis.name);
        if (axis.explicit_values.empty()) {
            if (axis.steps == 0) axis.steps = default_steps;
            if (axis.steps < 2) throw validation_error("axis " + name + ": steps must be >= 2");
            if (!std::isfinite(axis.start) || !std::isfinite(axis.stop) || !(axis.start < axis.stop)) {
                throw validation_error("axis " + name + ": start must be < stop");
            }
        } else {
            if (axis.explicit_values.size() < 2) throw validation_error("axis " + name + ": needs >= 2 values");
            for (std::size_t i = 0; i < axis.explicit_values.size(); ++i) {
                if (!std::isfinite(axis.explicit_values[i]) ||
                    (i > 0 && !(axis.explicit_values[i - 1] < axis.explicit_values[i]))) {
                    throw validation_error("axis " + name + ": values must be finite and strictly increasing");
                }
            }
        }
        if (axis.name == AxisName::gamma_t) {
            if (!spec.channel) throw validation_error("axis gamma_t requires a channel");
            if (axis.values().front() < 0.0) throw validation_error("axis gamma_t must be >= 0");
        }
        if (axis.name == AxisName::T && !(axis.values().front() > 0.0)) {
            throw validation_error("axis T must stay > 0");
        }
    }
    if (!std::isfinite(spec.fixed.k0) || !std::isfinite(spec.fixed.r)) throw validation_error("k0 and r must be finite");
    const bool t_swept = std::any_of(spec.axes.begin(), spec.axes.end(), [](const Axis& a) { return a.name == AxisName::T; });
    if (!t_swept && !(spec.fixed.T > 0.0 && std::isfinite(spec.fixed.T))) throw validation_error("T must be > 0");
    if (!(spec.fixed_gamma_t >= 0.0) || !std::isfinite(spec.fixed_gamma_t)) throw validation_error("gamma_t must be >= 0");
    if (!(spec.decay_rate >= 0.0) || !std::isfinite(spec.decay_rate)) throw validation_error("decay rate must be >= 0");
    return spec;
}

struct SweepRow {
    std::vector<double> axis_values;
    std::vector<double> measure_values;
    DiscordBranch branch = DiscordBranch::D1;
};

struct SweepTable {
    std::vector<std::string> comments;
    std::vector<std::string> axis_names;
    std::vector<std::string> measure_names;
    std::vector<SweepRow> rows;

    std::vector<std::string> header() const {
        std::vector<std::string> out = axis_names;
        out.insert(out.end(), measure_names.begin(), measure_names.end());
        out.emplace_back("discord_branch");
        return out;
    }
};

inline double measure_value(const CorrelationReport& rep, Measure m) {
    switch (m) {
        case Measure::discord: return rep.discord;
        case Measure::lqu: return rep.lqu;
        case Measure::mutual_info: return rep.mutual_info;
        case Measure::classical: return rep.classical;
    }
    return 0.0;
}

/// Thermal state at `params`, optionally pushed through the channel for Gamma*t = gamma_t.
inline CorrelationReport evaluate_point(const DotParams& params, std::optional<ChannelKind> channel, double gamma_t) {
    SymXState state = thermal_state_closed(params);
    if (channel) state = evolve_xstate(state, *channel, gamma_from_rate(1.0, gamma_t));
    return full_report(state);
}

inline std::vector<std::string> describe(const SweepSpec& spec) {
    std::vector<std::string> out;
    std::string fixed = "fixed:";
    const auto has = [&](AxisName n) {
        return std::any_of(spec.axes.begin(), spec.axes.end(), [&](const Axis& a) { return a.name == n; });
    };
    if (!has(AxisName::k0)) fixed += " k0=" + format_real(spec.fixed.k0);
    if (!has(AxisName::r)) fixed += " r=" + format_real(spec.fixed.r);
    if (!has(AxisName::T)) fixed += " T=" + format_real(spec.fixed.T);
    if (spec.channel && !has(AxisName::gamma_t)) fixed += " gamma_t=" + format_real(spec.fixed_gamma_t);
    out.push_back(fixed);
    out.push_back(std::string("channel: ") + (spec.channel ? to_string(*spec.channel) : "none") +
                  (spec.channel ? " decay_rate=" + format_real(spec.decay_rate) : ""));
    return out;
}

/// Evaluates every grid point in lexicographic axis order (first axis outermost).
inline SweepTable run_sweep(const SweepSpec& input) {
    const SweepSpec spec = validated(input);
    SweepTable table;
    table.comments = spec.notes;
    for (auto& line : describe(spec)) table.comments.push_back(std::move(line));
    for (const auto& axis : spec.axes) table.axis_names.emplace_back(to_string(axis.name));
    for (Measure m : spec.measures) table.measure_names.emplace_back(to_string(m));

    std::vector<std::vector<double>> grids;
    for (const auto& axis : spec.axes) grids.push_back(axis.values());
    const std::size_t inner = grids.size() == 2 ? grids[1].size() : 1;
    const std::size_t total = grids[0].size() * inner;
    table.rows.reserve(total);

    for (std::size_t k = 0; k < total; ++k) {
        SweepRow row;
        row.axis_values.push_back(grids[0][k / inner]);
        if (grids.size() == 2) row.axis_values.push_back(grids[1][k % inner]);

        DotParams params = spec.fixed;
        double gamma_t = spec.fixed_gamma_t;
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            const double value = row.axis_values[a];
            switch (spec.axes[a].name) {
                case AxisName::k0: params.k0 = value; break;
                case AxisName::r: params.r = value; break;
                case AxisName::T: params.T = value; break;
                case AxisName::gamma_t: gamma_t = value; break;
            }
        }
        CorrelationReport rep;
        try {
            rep = evaluate_point(params, spec.channel, gamma_t);
        } catch (const error& e) {
            std::string where;
            for (std::size_t a = 0; a < spec.axes.size(); ++a) {
                where += (a ? ", " : "") + table.axis_names[a] + "=" + format_real(row.axis_values[a]);
            }
            throw computation_error("sweep point (" + where + ") failed: " + e.what());
        }
        for (Measure m : spec.measures) {
            const double value = measure_value(rep, m);
            if (!std::isfinite(value)) throw computation_error("non-finite measure at sweep row " + std::to_string(k));
            row.measure_values.push_back(value);
        }
        row.branch = rep.discord_branch;
        table.rows.push_back(std::move(row));
    }
    return table;
}

enum class FigureId { fig1, fig2, fig3, fig4, fig5, fig6 };

inline std::optional<FigureId> parse_figure(std::string_view s) {
    constexpr std::string_view names[] = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
    for (int i = 0; i < 6; ++i)
        if (s == names[i]) return static_cast<FigureId>(i);
    return std::nullopt;
}

inline Axis range_axis(AxisName name, double start, double stop, int steps) {
    Axis a;
    a.name = name;
    a.start = start;
    a.stop = stop;
    a.steps = steps;
    return a;
}

/// Sweeps reproducing the six figures (discord and LQU columns).
inline SweepSpec figure_preset(FigureId id) {
    SweepSpec spec;
    spec.measures = {Measure::discord, Measure::lqu};
    switch (id) {
        case FigureId::fig1:
            spec.notes = {"figure: fig1 discord and LQU vs r",
                          "defaults: k0=10 T=0.4 (fixed values not given in the figure caption)"};
            spec.axes = {range_axis(AxisName::r, 0.0, 5.0, default_steps_1d)};
            spec.fixed = {10.0, 0.0, 0.4};
            break;
        case FigureId::fig2:
            spec.notes = {"figure: fig2 discord and LQU vs k0",
                          "defaults: r=1 T=0.4 (fixed values not given in the figure caption)"};
            spec.axes = {range_axis(AxisName::k0, -10.0, 10.0, default_steps_1d)};
            spec.fixed = {0.0, 1.0, 0.4};
            break;
        case FigureId::fig3:
            spec.notes = {"figure: fig3 discord and LQU vs T and r at k0=10", "defaults: axis ranges"};
            spec.axes = {range_axis(AxisName::T, 0.1, 4.0, default_steps_2d),
                         range_axis(AxisName::r, 0.0, 5.0, default_steps_2d)};
            spec.fixed = {10.0, 0.0, 1.0};
            break;
        case FigureId::fig4: {
            spec.notes = {"figure: fig4 discord and LQU vs r for several T at k0=10",
                          "defaults: T=0.4,1,2 are implementer choices; T=4 is named in the text"};
            Axis temps;
            temps.name = AxisName::T;
            temps.explicit_values = {0.4, 1.0, 2.0, 4.0};
            spec.axes = {temps, range_axis(AxisName::r, 0.0, 5.0, default_steps_1d)};
            spec.fixed = {10.0, 0.0, 1.0};
            break;
        }
        case FigureId::fig5:
        case FigureId::fig6:
            spec.notes = {id == FigureId::fig5 ? "figure: fig5 discord and LQU vs Gamma_ph*t and k0 (dephasing)"
                                               : "figure: fig6 discord and LQU vs Gamma_am*t and k0 (amplitude damping)",
                          "defaults: axis ranges; r=1 T=0.4 from the caption"};
            spec.axes = {range_axis(AxisName::gamma_t, 0.0, 2.0, default_steps_2d),
                         range_axis(AxisName::k0, -10.0, 10.0, default_steps_2d)};
            spec.fixed = {0.0, 1.0, 0.4};
            spec.channel = id == FigureId::fig5 ? ChannelKind::Dephasing : ChannelKind::AmplitudeDamping;
            break;
    }
    return spec;
}

inline void emit_csv(const SweepTable& table, std::ostream& out) {
    for (const auto& c : table.comments) out << "# " << c << '\n';
    const auto header = table.header();
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (double v : row.axis_values) out << format_real(v) << ',';
        for (double v : row.measure_values) out << format_real(v) << ',';
        out << to_string(row.branch) << '\n';
    }
}

inline void emit_csv(const SweepTable& table, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw error("cannot open '" + path + "' for writing");
    emit_csv(table, file);
    file.flush();
    if (!file) throw error("write to '" + path + "' failed");
}

/// Parses the CSV format written by emit_csv.
inline SweepTable read_csv(std::istream& in) {
    SweepTable table;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0 || line == "#") {
            table.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
            continue;
        }
        const auto fields = split(line, ',');
        if (!have_header) {
            if (fields.empty() || fields.back() != "discord_branch") {
                throw validation_error("CSV header must end with discord_branch");
            }
            for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
                if (parse_axis_name(fields[i])) {
                    if (!table.measure_names.empty()) throw validation_error("CSV axis columns must precede measures");
                    table.axis_names.push_back(fields[i]);
                } else if (parse_measure(fields[i])) {
                    table.measure_names.push_back(fields[i]);
                } else {
                    throw validation_error("unknown CSV column '" + fields[i] + "'");
                }
            }
            have_header = true;
            continue;
        }
        const std::size_t expected = table.axis_names.size() + table.measure_names.size() + 1;
        if (fields.size() != expected) {
            throw validation_error("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                                   " fields");
        }
        SweepRow row;
        std::size_t f = 0;
        for (std::size_t i = 0; i < table.axis_names.size(); ++i) row.axis_values.push_back(parse_real(fields[f++], "CSV"));
        for (std::size_t i = 0; i < table.measure_names.size(); ++i)
            row.measure_values.push_back(parse_real(fields[f++], "CSV"));
        const auto branch = parse_branch(fields[f]);
        if (!branch) throw validation_error("CSV line " + std::to_string(line_no) + ": bad discord_branch");
        row.branch = *branch;
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw validation_error("CSV has no header line");
    return table;
}

/// Flat "key = value" config (UTF-8, '#' comments). Keys: k0, r, T, gamma_t,
/// axis (repeatable; name:start:stop[:steps] or name:v1,v2,...), channel,
/// decay_rate, measures (comma separated).
inline SweepSpec parse_config(std::istream& in) {
    SweepSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw validation_error("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key == "k0") spec.fixed.k0 = parse_real(value, key);
        else if (key == "r") spec.fixed.r = parse_real(value, key);
        else if (key == "T") spec.fixed.T = parse_real(value, key);
        else if (key == "gamma_t") spec.fixed_gamma_t = parse_real(value, key);
        else if (key == "decay_rate") spec.decay_rate = parse_real(value, key);
        else if (key == "axis") spec.axes.push_back(parse_axis(value));
        else if (key == "channel") {
            const auto kind = parse_channel(value);
            if (!kind) throw validation_error("config: channel must be dephasing or amplitude");
            spec.channel = kind;
        } else if (key == "measures") {
            spec.measures.clear();
            for (const auto& name : split(value, ',')) {
                const auto m = parse_measure(trim(name));
                if (!m) throw validation_error("config: unknown measure '" + trim(name) + "'");
                spec.measures.push_back(*m);
            }
        } else {
            throw validation_error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    return spec;
}

}  // namespace qdot
