#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli_support.hpp"
#include "qdot/sweep.hpp"

namespace qdot {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::run_cli;
using testing::scratch_dir;
using testing::slurp;

const fs::path kGolden = QDOT_GOLDEN_DIR;

void expect_report_matches_golden(const json& got) {
    const json want = json::parse(slurp(kGolden / "report_k10_r1_T04.json"));
    for (const auto& [key, value] : want.items()) {
        ASSERT_TRUE(got.contains(key)) << key;
        if (value.is_string()) {
            EXPECT_EQ(got[key], value) << key;
        } else {
            EXPECT_NEAR(got[key].get<double>(), value.get<double>(), 1e-9) << key;
        }
    }
}

TEST(Cli, ReportMatchesGolden) {
    const auto res = run_cli("report --k0 10 --r 1 --T 0.4");
    ASSERT_EQ(res.exit_code, 0);
    expect_report_matches_golden(json::parse(res.out));
}

TEST(Cli, OracleReportMatchesGolden) {
    const auto res = run_cli("report --k0 10 --r 1 --T 0.4 --method oracle");
    ASSERT_EQ(res.exit_code, 0);
    const json got = json::parse(res.out);
    const json want = json::parse(slurp(kGolden / "report_k10_r1_T04.json"));
    EXPECT_NEAR(got["discord"].get<double>(), want["discord"].get<double>(), 1e-9);
    EXPECT_NEAR(got["lqu"].get<double>(), want["lqu"].get<double>(), 1e-9);
    EXPECT_NEAR(got["mutual_info"].get<double>(), want["mutual_info"].get<double>(), 1e-9);
}

TEST(Cli, ReportWithChannelLowersLqu) {
    const auto base = json::parse(run_cli("report").out);
    const auto res = run_cli("report --channel amplitude --decay-rate 2 --time 0.25");
    ASSERT_EQ(res.exit_code, 0);
    EXPECT_LT(json::parse(res.out)["lqu"].get<double>(), base["lqu"].get<double>());
}

TEST(Cli, ReportCsvFormat) {
    const auto res = run_cli("report --format csv");
    ASSERT_EQ(res.exit_code, 0);
    EXPECT_EQ(res.out.rfind("mutual_info,classical,discord,discord_branch,gamma_disc,lqu,lambda1,lambda2\n", 0), 0u);
    EXPECT_NE(res.out.find(",0.922067458716,D2,"), std::string::npos);
}

TEST(Cli, ValidationErrorsExitTwo) {
    EXPECT_EQ(run_cli("report --T 0").exit_code, 2);
    EXPECT_EQ(run_cli("report --T -1").exit_code, 2);
    EXPECT_EQ(run_cli("report --channel depolarizing").exit_code, 2);
    EXPECT_EQ(run_cli("report --channel dephasing --time -1").exit_code, 2);
    EXPECT_EQ(run_cli("report --k0 ten").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --vary gamma_t:0:0 --channel dephasing").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --vary gamma_t:0:1").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --vary r:0:5:1").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --vary r:0:5 --vary r:0:1").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --vary r:0:5 --measures entropy").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --time-max 2").exit_code, 2);
    EXPECT_EQ(run_cli("figure fig7").exit_code, 2);
    EXPECT_EQ(run_cli("plot /nonexistent/input.csv").exit_code, 2);
    EXPECT_EQ(run_cli("").exit_code, 2);
}

TEST(Cli, ComputationAndIoErrorsExitOne) {
    EXPECT_EQ(run_cli("report --out /nonexistent/dir/report.json").exit_code, 1);
    EXPECT_EQ(run_cli("figure fig1 --out /nonexistent/dir/fig1.csv").exit_code, 1);
}

TEST(Cli, SweepFromFlags) {
    const auto res = run_cli("sweep --vary r:0:5:11 --k0 10 --T 0.4");
    ASSERT_EQ(res.exit_code, 0);
    std::istringstream in(res.out);
    const SweepTable table = read_csv(in);
    EXPECT_EQ(table.rows.size(), 11u);
    EXPECT_EQ(table.header(), (std::vector<std::string>{"r", "discord", "lqu", "discord_branch"}));
}

TEST(Cli, SweepTimeMaxAddsChannelAxis) {
    const auto res = run_cli("sweep --channel dephasing --decay-rate 2 --time-max 1 --steps 5 --measures lqu");
    ASSERT_EQ(res.exit_code, 0);
    std::istringstream in(res.out);
    const SweepTable table = read_csv(in);
    ASSERT_EQ(table.rows.size(), 5u);
    EXPECT_EQ(table.axis_names, (std::vector<std::string>{"gamma_t"}));
    EXPECT_EQ(table.rows.back().axis_values[0], 2.0);
}

TEST(Cli, SweepFromConfigWithJsonOutput) {
    const fs::path dir = scratch_dir("config");
    {
        std::ofstream cfg(dir / "sweep.cfg");
        cfg << "k0 = 10\nT = 0.4\naxis = r:0:5:6\naxis = T:0.4,4\nmeasures = discord, classical\n";
    }
    const auto res = run_cli("sweep --config \"" + (dir / "sweep.cfg").string() + "\" --format json");
    ASSERT_EQ(res.exit_code, 0);
    const json j = json::parse(res.out);
    ASSERT_EQ(j["rows"].size(), 12u);
    EXPECT_TRUE(j["rows"][0].contains("classical"));
    EXPECT_EQ(j["rows"][1]["T"].get<double>(), 4.0);
}

TEST(Cli, FigurePresetsMatchGoldenFiles) {
    const fs::path dir = scratch_dir("figures");
    for (const std::string id : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}) {
        const fs::path out = dir / (id + ".csv");
        ASSERT_EQ(run_cli("figure " + id + " --out \"" + out.string() + "\"").exit_code, 0) << id;
        const std::string first = slurp(out);
        ASSERT_EQ(run_cli("figure " + id + " --out \"" + out.string() + "\"").exit_code, 0) << id;
        EXPECT_EQ(slurp(out), first) << id << " is not rerun-stable";
        EXPECT_EQ(first, slurp(kGolden / (id + ".csv"))) << id << " differs from its golden file";
    }
}

TEST(Cli, FigureWritesSvgAndPlotReproducesIt) {
    const fs::path dir = scratch_dir("plot");
    const std::string csv = (dir / "fig1.csv").string(), svg = (dir / "fig1.svg").string();
    ASSERT_EQ(run_cli("figure fig1 --out \"" + csv + "\" --svg \"" + svg + "\"").exit_code, 0);
    const auto plotted = run_cli("plot \"" + csv + "\"");
    ASSERT_EQ(plotted.exit_code, 0);
    EXPECT_EQ(plotted.out.rfind("<svg", 0), 0u);
    EXPECT_NE(slurp(svg).find("<polyline"), std::string::npos);
}

}  // namespace
}  // namespace qdot
