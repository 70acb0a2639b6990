#include <algorithm>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "qdot/sweep.hpp"

namespace qdot {
namespace {

SweepSpec r_sweep(int steps) {
    SweepSpec spec;
    spec.axes = {range_axis(AxisName::r, 0.0, 5.0, steps)};
    spec.fixed = {10.0, 0.0, 0.4};
    return spec;
}

std::string csv_of(const SweepTable& table) {
    std::ostringstream os;
    emit_csv(table, os);
    return os.str();
}

std::string first_data_header(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("#", 0) != 0) return line;
    return {};
}

TEST(ParseAxis, RangeAndListForms) {
    const Axis range = parse_axis("r:0:5:11");
    EXPECT_EQ(range.name, AxisName::r);
    EXPECT_EQ(range.start, 0.0);
    EXPECT_EQ(range.stop, 5.0);
    EXPECT_EQ(range.steps, 11);

    const Axis no_steps = parse_axis("gamma_t:0:2");
    EXPECT_EQ(no_steps.name, AxisName::gamma_t);
    EXPECT_EQ(no_steps.steps, 0);

    const Axis list = parse_axis("T:0.4,1,2,4");
    EXPECT_EQ(list.name, AxisName::T);
    EXPECT_EQ(list.values(), (std::vector<double>{0.4, 1.0, 2.0, 4.0}));
}

TEST(ParseAxis, RejectsMalformedText) {
    EXPECT_THROW(parse_axis("q:0:1"), validation_error);
    EXPECT_THROW(parse_axis("r"), validation_error);
    EXPECT_THROW(parse_axis("r:0:x"), validation_error);
    EXPECT_THROW(parse_axis("r:0:5:2.5"), validation_error);
    EXPECT_THROW(parse_axis("r:0:1:2:3"), validation_error);
}

TEST(Axis, EndpointsAreExact) {
    const auto v = range_axis(AxisName::T, 0.1, 4.0, 51).values();
    ASSERT_EQ(v.size(), 51u);
    EXPECT_EQ(v.front(), 0.1);
    EXPECT_EQ(v.back(), 4.0);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LT(v[i - 1], v[i]);
}

TEST(Validated, FillsDefaultSteps) {
    SweepSpec one = r_sweep(0);
    EXPECT_EQ(validated(one).axes[0].steps, default_steps_1d);
    SweepSpec two = one;
    two.axes.push_back(range_axis(AxisName::T, 0.1, 4.0, 0));
    const auto v = validated(two);
    EXPECT_EQ(v.axes[0].steps, default_steps_2d);
    EXPECT_EQ(v.axes[1].steps, default_steps_2d);
}

TEST(Validated, RejectsDegenerateGammaAxis) {
    SweepSpec spec;
    spec.channel = ChannelKind::Dephasing;
    spec.axes = {range_axis(AxisName::gamma_t, 0.0, 0.0, 11)};
    EXPECT_THROW(validated(spec), validation_error);
    spec.axes = {range_axis(AxisName::gamma_t, 0.0, 1.0, 1)};
    EXPECT_THROW(validated(spec), validation_error);
}

TEST(Validated, RejectsInvalidSpecs) {
    SweepSpec no_axes;
    EXPECT_THROW(validated(no_axes), validation_error);

    SweepSpec empty_measures = r_sweep(11);
    empty_measures.measures.clear();
    EXPECT_THROW(validated(empty_measures), validation_error);

    SweepSpec twice = r_sweep(11);
    twice.measures = {Measure::lqu, Measure::lqu};
    EXPECT_THROW(validated(twice), validation_error);

    SweepSpec duplicate = r_sweep(11);
    duplicate.axes.push_back(range_axis(AxisName::r, 1.0, 2.0, 3));
    EXPECT_THROW(validated(duplicate), validation_error);

    SweepSpec three = r_sweep(11);
    three.axes.push_back(range_axis(AxisName::k0, 1.0, 2.0, 3));
    three.axes.push_back(range_axis(AxisName::T, 1.0, 2.0, 3));
    EXPECT_THROW(validated(three), validation_error);

    SweepSpec time_without_channel;
    time_without_channel.axes = {range_axis(AxisName::gamma_t, 0.0, 1.0, 5)};
    EXPECT_THROW(validated(time_without_channel), validation_error);

    SweepSpec reversed = r_sweep(11);
    reversed.axes[0].start = 5.0;
    reversed.axes[0].stop = 0.0;
    EXPECT_THROW(validated(reversed), validation_error);

    SweepSpec cold;
    cold.axes = {range_axis(AxisName::T, 0.0, 1.0, 5)};
    EXPECT_THROW(validated(cold), validation_error);

    SweepSpec frozen = r_sweep(11);
    frozen.fixed.T = -1.0;
    EXPECT_THROW(validated(frozen), validation_error);

    SweepSpec unsorted;
    unsorted.axes = {parse_axis("T:1,0.5")};
    EXPECT_THROW(validated(unsorted), validation_error);
}

TEST(RunSweep, OneAxisDiscordNonincreasingInField) {
    const SweepTable table = run_sweep(r_sweep(11));
    ASSERT_EQ(table.rows.size(), 11u);
    EXPECT_EQ(table.header(), (std::vector<std::string>{"r", "discord", "lqu", "discord_branch"}));
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        EXPECT_LE(table.rows[i].measure_values[0], table.rows[i - 1].measure_values[0] + 1e-12);
        EXPECT_LE(table.rows[i].measure_values[1], table.rows[i - 1].measure_values[1] + 1e-12);
    }
}

TEST(RunSweep, RowsMatchFullReport) {
    SweepSpec spec = r_sweep(6);
    spec.measures = {Measure::mutual_info, Measure::classical, Measure::discord, Measure::lqu};
    const SweepTable table = run_sweep(spec);
    for (const auto& row : table.rows) {
        const auto rep = full_report(thermal_state_closed({10.0, row.axis_values[0], 0.4}));
        EXPECT_EQ(row.measure_values[0], rep.mutual_info);
        EXPECT_EQ(row.measure_values[1], rep.classical);
        EXPECT_EQ(row.measure_values[2], rep.discord);
        EXPECT_EQ(row.measure_values[3], rep.lqu);
        EXPECT_EQ(row.branch, rep.discord_branch);
    }
}

TEST(RunSweep, TwoAxisRowCountAndOrder) {
    SweepSpec spec;
    spec.axes = {range_axis(AxisName::r, 0.0, 5.0, 7), range_axis(AxisName::T, 0.2, 4.0, 5)};
    spec.fixed.k0 = 10.0;
    const SweepTable table = run_sweep(spec);
    ASSERT_EQ(table.rows.size(), 35u);
    const auto r = spec.axes[0].values();
    const auto T = spec.axes[1].values();
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        EXPECT_EQ(table.rows[k].axis_values[0], r[k / 5]);
        EXPECT_EQ(table.rows[k].axis_values[1], T[k % 5]);
    }
}

TEST(RunSweep, ChannelTimeAxisStartsAtThermalState) {
    SweepSpec spec;
    spec.axes = {range_axis(AxisName::gamma_t, 0.0, 2.0, 5)};
    spec.channel = ChannelKind::Dephasing;
    const SweepTable table = run_sweep(spec);
    const auto rep = full_report(thermal_state_closed({10.0, 1.0, 0.4}));
    EXPECT_EQ(table.rows.front().measure_values[0], rep.discord);
    EXPECT_EQ(table.rows.front().measure_values[1], rep.lqu);
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        EXPECT_LT(table.rows[i].measure_values[1], table.rows[i - 1].measure_values[1]);
}

TEST(RunSweep, RejectsNonFiniteFixedValues) {
    SweepSpec spec = r_sweep(5);
    spec.fixed.k0 = std::numeric_limits<double>::infinity();
    EXPECT_THROW(run_sweep(spec), validation_error);
}

TEST(FigurePreset, Fig1Schema) {
    const SweepSpec spec = validated(figure_preset(FigureId::fig1));
    ASSERT_EQ(spec.axes.size(), 1u);
    EXPECT_EQ(spec.axes[0].name, AxisName::r);
    EXPECT_EQ(spec.axes[0].size(), 101u);
    EXPECT_EQ(spec.fixed.k0, 10.0);
    EXPECT_EQ(spec.fixed.T, 0.4);
    EXPECT_FALSE(spec.channel);
    const std::string csv = csv_of(run_sweep(spec));
    EXPECT_EQ(first_data_header(csv), "r,discord,lqu,discord_branch");
    EXPECT_NE(csv.find("# defaults: k0=10 T=0.4"), std::string::npos);
}

TEST(FigurePreset, Fig1ColumnsNonincreasing) {
    const SweepTable table = run_sweep(figure_preset(FigureId::fig1));
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        EXPECT_LE(table.rows[i].measure_values[0], table.rows[i - 1].measure_values[0] + 1e-12);
        EXPECT_LE(table.rows[i].measure_values[1], table.rows[i - 1].measure_values[1] + 1e-12);
    }
}

TEST(FigurePreset, Fig2VariesK0) {
    const SweepSpec spec = figure_preset(FigureId::fig2);
    ASSERT_EQ(spec.axes.size(), 1u);
    EXPECT_EQ(spec.axes[0].name, AxisName::k0);
    EXPECT_EQ(spec.fixed.r, 1.0);
    EXPECT_EQ(spec.fixed.T, 0.4);
}

TEST(FigurePreset, Fig3IsTemperatureFieldGrid) {
    const SweepSpec spec = validated(figure_preset(FigureId::fig3));
    ASSERT_EQ(spec.axes.size(), 2u);
    EXPECT_EQ(spec.axes[0].name, AxisName::T);
    EXPECT_EQ(spec.axes[1].name, AxisName::r);
    EXPECT_EQ(spec.fixed.k0, 10.0);
    EXPECT_FALSE(spec.channel);
}

TEST(FigurePreset, Fig4ListsTemperatures) {
    const SweepSpec spec = validated(figure_preset(FigureId::fig4));
    ASSERT_EQ(spec.axes.size(), 2u);
    EXPECT_EQ(spec.axes[0].values(), (std::vector<double>{0.4, 1.0, 2.0, 4.0}));
    EXPECT_EQ(spec.axes[1].name, AxisName::r);
    EXPECT_EQ(spec.fixed.k0, 10.0);
    const std::string csv = csv_of(run_sweep(spec));
    EXPECT_NE(csv.find("implementer choices"), std::string::npos);
}

TEST(FigurePreset, Fig5And6UseChannels) {
    const SweepSpec five = validated(figure_preset(FigureId::fig5));
    ASSERT_EQ(five.axes.size(), 2u);
    EXPECT_EQ(five.axes[0].name, AxisName::gamma_t);
    EXPECT_EQ(five.axes[1].name, AxisName::k0);
    EXPECT_EQ(five.fixed.r, 1.0);
    EXPECT_EQ(five.fixed.T, 0.4);
    EXPECT_EQ(five.channel, ChannelKind::Dephasing);
    EXPECT_EQ(figure_preset(FigureId::fig6).channel, ChannelKind::AmplitudeDamping);
}

TEST(ParseFigure, KnownAndUnknownIds) {
    EXPECT_EQ(parse_figure("fig3"), FigureId::fig3);
    EXPECT_FALSE(parse_figure("fig7"));
    EXPECT_FALSE(parse_figure("Fig1"));
}

TEST(EmitCsv, DeterministicAndFormatted) {
    const SweepTable table = run_sweep(figure_preset(FigureId::fig5));
    const std::string a = csv_of(table);
    const std::string b = csv_of(run_sweep(figure_preset(FigureId::fig5)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find('\r'), std::string::npos);
    EXPECT_EQ(first_data_header(a), "gamma_t,k0,discord,lqu,discord_branch");
}

TEST(FormatReal, TwelveSignificantDigits) {
    EXPECT_EQ(format_real(0.9220674587158011), "0.922067458716");
    EXPECT_EQ(format_real(-0.0), "0");
    EXPECT_EQ(format_real(5.0), "5");
    EXPECT_EQ(format_real(1e-20), "1e-20");
}

TEST(ReadCsv, RoundTripsWithinPrintedPrecision) {
    const SweepTable table = run_sweep(r_sweep(11));
    std::istringstream in(csv_of(table));
    const SweepTable back = read_csv(in);
    EXPECT_EQ(back.comments, table.comments);
    EXPECT_EQ(back.header(), table.header());
    ASSERT_EQ(back.rows.size(), table.rows.size());
    for (std::size_t k = 0; k < back.rows.size(); ++k) {
        EXPECT_EQ(back.rows[k].axis_values, table.rows[k].axis_values);
        for (std::size_t m = 0; m < 2; ++m)
            EXPECT_NEAR(back.rows[k].measure_values[m], table.rows[k].measure_values[m], 1e-11);
        EXPECT_EQ(back.rows[k].branch, table.rows[k].branch);
    }
    EXPECT_EQ(csv_of(back), csv_of(table));
}

TEST(ReadCsv, RejectsBadInput) {
    std::istringstream no_header("# only comments\n");
    EXPECT_THROW(read_csv(no_header), validation_error);
    std::istringstream bad_column("r,entropy,discord_branch\n");
    EXPECT_THROW(read_csv(bad_column), validation_error);
    std::istringstream short_row("r,discord,discord_branch\n1,0.5\n");
    EXPECT_THROW(read_csv(short_row), validation_error);
    std::istringstream bad_branch("r,discord,discord_branch\n1,0.5,D3\n");
    EXPECT_THROW(read_csv(bad_branch), validation_error);
}

TEST(ParseConfig, ReadsKeysAndComments) {
    std::istringstream in(
        "# dephasing sweep\n"
        "k0 = 10\n"
        "r = 1   # field\n"
        "T = 0.4\n"
        "channel = dephasing\n"
        "decay_rate = 2\n"
        "axis = gamma_t:0:2:21\n"
        "axis = k0:-10,0,10\n"
        "measures = discord, lqu, mutual_info\n");
    const SweepSpec spec = parse_config(in);
    EXPECT_EQ(spec.fixed.k0, 10.0);
    EXPECT_EQ(spec.fixed.r, 1.0);
    EXPECT_EQ(spec.fixed.T, 0.4);
    EXPECT_EQ(spec.channel, ChannelKind::Dephasing);
    EXPECT_EQ(spec.decay_rate, 2.0);
    ASSERT_EQ(spec.axes.size(), 2u);
    EXPECT_EQ(spec.axes[0].steps, 21);
    EXPECT_EQ(spec.axes[1].explicit_values.size(), 3u);
    EXPECT_EQ(spec.measures, (std::vector<Measure>{Measure::discord, Measure::lqu, Measure::mutual_info}));
    EXPECT_EQ(run_sweep(spec).rows.size(), 63u);
}

TEST(ParseConfig, RejectsUnknownKeysAndValues) {
    std::istringstream unknown("temperature = 1\n");
    EXPECT_THROW(parse_config(unknown), validation_error);
    std::istringstream no_equals("k0 10\n");
    EXPECT_THROW(parse_config(no_equals), validation_error);
    std::istringstream channel("channel = depolarizing\n");
    EXPECT_THROW(parse_config(channel), validation_error);
    std::istringstream measure("measures = discord, entropy\n");
    EXPECT_THROW(parse_config(measure), validation_error);
}

}  // namespace
}  // namespace qdot
