#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "oracles/oracles.hpp"
#include "serialize.hpp"

using namespace frustra;
using namespace frustra::cli;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::string& args) {
  const auto err_path = std::filesystem::temp_directory_path() / "frustra_test_cli_stderr.txt";
  const std::string command = std::string(FRUSTRA_CLI_PATH) + " " + args + " 2>" + err_path.string();
  CliRun r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  r.err.assign(std::istreambuf_iterator<char>(err), {});
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string models_dir() { return FRUSTRA_MODELS_DIR; }

}  // namespace

TEST(ConfigParsing, Params) {
  ParamMap p;
  add_param(p, "g=1.5");
  add_param(p, "J=-2e-1");
  EXPECT_EQ(p.at("g"), 1.5);
  EXPECT_EQ(p.at("J"), -0.2);
  for (const char* bad : {"g", "g=", "=1", "g=abc", "g=1x"}) EXPECT_THROW(add_param(p, bad), ConfigError) << bad;
}

TEST(ConfigParsing, Grid) {
  const GridSpec g = parse_grid("0:1:5");
  const auto v = g.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_DOUBLE_EQ(v[2], 0.5);
  EXPECT_EQ(parse_grid("2:2:1").values(), std::vector<double>{2.0});
  for (const char* bad : {"0:1", "0:1:0", "a:1:3", "0:1:3:4", "0:1:1"}) EXPECT_THROW(parse_grid(bad), ConfigError) << bad;
}

TEST(ConfigParsing, Lists) {
  EXPECT_EQ(parse_doubles("1e-1,1e-2"), (std::vector<double>{0.1, 0.01}));
  EXPECT_EQ(parse_ints("4,8,16"), (std::vector<int>{4, 8, 16}));
  EXPECT_THROW(parse_doubles(""), ConfigError);
  EXPECT_THROW(parse_ints("4,x"), ConfigError);
  EXPECT_EQ(parse_indices("3", 8), (std::vector<std::size_t>{3}));
  EXPECT_EQ(parse_indices("0..3", 8), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(parse_indices("0,2,5", 8), (std::vector<std::size_t>{0, 2, 5}));
  EXPECT_EQ(parse_indices("all", 4), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_THROW(parse_indices("3..1", 8), ConfigError);
  EXPECT_THROW(parse_indices("x", 8), ConfigError);
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_EQ(parse_format("csv"), Format::Csv);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(ConfigParsing, LoadModel) {
  RunConfig c;
  c.model = "chain3";
  c.params = {{"gb", 10.0}};
  c.bipartition = "B|AC";
  const SpinModel grouped = load_model(c);
  EXPECT_EQ(grouped.dims, (std::vector<int>{2, 4}));
  c = RunConfig{};
  c.model = models_dir() + "/chain3_custom.json";
  EXPECT_EQ(load_model(c).num_sites(), 3u);
  c.params = {{"g", 1.0}};
  EXPECT_THROW(load_model(c), ConfigError);
  c = RunConfig{};
  c.model = "no_such_model";
  EXPECT_THROW(load_model(c), std::exception);
}

TEST(ExitCodes, Mapping) {
  for (ErrorKind k : {ErrorKind::Parse, ErrorKind::InvalidArgument, ErrorKind::InvalidModel,
                      ErrorKind::InvalidAssignment, ErrorKind::InvalidBipartition, ErrorKind::NonHermitianTerm,
                      ErrorKind::NotBipartite, ErrorKind::IndexOutOfRange}) {
    EXPECT_EQ(exit_code_for(k), kExitConfig) << to_string(k);
  }
  for (ErrorKind k : {ErrorKind::NoConvergence, ErrorKind::DimensionCap, ErrorKind::UndefinedBound,
                      ErrorKind::DegenerateSeparation, ErrorKind::OracleScaleExceeded}) {
    EXPECT_EQ(exit_code_for(k), kExitComputation) << to_string(k);
  }
}

TEST(Serialize, CsvNumbers) {
  EXPECT_EQ(csv_number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv_number(std::optional<double>{}), "");
  EXPECT_EQ(std::stod(csv_number(1.0 / 3.0)), 1.0 / 3.0);
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.row({"1", "2"});
  EXPECT_EQ(out.str(), "a,b\n1,2\n");
  EXPECT_THROW(w.row({"1"}), std::exception);
}

TEST(Serialize, ReportKeepsFieldNames) {
  const FrustrationReport r = analyze_ground(split(triangle(1.0)));
  const json j = to_json(r);
  EXPECT_TRUE(j.at("ef_bound").is_null());
  EXPECT_EQ(j.at("undefined_reason"), "delta_e_ent = 0");
  EXPECT_EQ(j.at("degenerate_ground"), true);
  for (const char* key : {"E0", "E0_L", "E0_I", "E_f", "delta_e_ent", "entanglement", "ratio_bound",
                          "local_frustration", "interaction_frustration"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Cli, AnalyzeIsing) {
  const CliRun r = run_cli("analyze --model ising2 --param g=1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("ef_bound").get<double>(), 0.3819660113, 1e-9);
  EXPECT_NEAR(j.at("entanglement").get<double>(), 0.0527864045, 1e-9);
}

TEST(Cli, AnalyzeTriangleReportsAbsentBound) {
  const CliRun r = run_cli("analyze --model triangle --param J=1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("ef_bound").is_null());
  EXPECT_EQ(j.at("undefined_reason"), "delta_e_ent = 0");
  EXPECT_EQ(j.at("degenerate_ground"), true);
}

TEST(Cli, AnalyzeChainBipartition) {
  const CliRun r = run_cli("analyze --model chain3 --param gb=10 --bipartition 'B|AC'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j.at("ratio_bound").get<double>(), 0.25);
}

TEST(Cli, AnalyzeWithSplitFiles) {
  const CliRun r = run_cli("analyze --model ising2 --split file:" + models_dir() + "/ising2_asymmetric_split.json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out).at("ef_bound").get<double>(), 0.0890727924, 1e-9);
  const CliRun s = run_cli("analyze --model " + models_dir() + "/ising2_g1.json --split schmidt:0.001");
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NEAR(nlohmann::json::parse(s.out).at("delta_e_ent").get<double>(), 0.001, 1e-12);
}

TEST(Cli, SweepMatchesClosedForms) {
  const CliRun r = run_cli("sweep --g-grid 0:5:51");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 52u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"g", "entanglement", "ef_bound_symmetric", "ef_bound_asymmetric",
                                               "closed_form_gse", "closed_form_fb", "closed_form_fb2", "abs_dev_gse",
                                               "abs_dev_fb", "abs_dev_fb2"}));
  EXPECT_NEAR(std::stod(rows[1][1]), 0.5, 1e-9);
  EXPECT_EQ(rows[1][2], "");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double g = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][1]), oracle::ising_entanglement(g), 1e-8);
    EXPECT_NEAR(std::stod(rows[i][2]), oracle::ising_bound_symmetric(g), 1e-8);
    EXPECT_NEAR(std::stod(rows[i][3]), oracle::ising_bound_asymmetric(g), 1e-8);
    EXPECT_LE(std::stod(rows[i][3]), std::stod(rows[i][2]));
  }
}

TEST(Cli, ExcitedAndSaturate) {
  const CliRun e = run_cli("excited --model ising2 --param g=2 --j 0..3");
  ASSERT_EQ(e.code, 0) << e.err;
  const auto reports = nlohmann::json::parse(e.out);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_NEAR(reports[0].at("bound_29").get<double>(), 1.0 / 9.0, 1e-12);

  const CliRun s = run_cli("saturate --model ising2 --param g=1 --gammas 1e-1,1e-2,1e-3");
  ASSERT_EQ(s.code, 0) << s.err;
  const auto rows = parse_csv(s.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][8], "excess");
  EXPECT_GT(std::stod(rows[1][8]), std::stod(rows[2][8]));
  EXPECT_GT(std::stod(rows[2][8]), std::stod(rows[3][8]));
}

TEST(Cli, PerturbAndSelftest) {
  const CliRun p = run_cli("perturb --trials 30 --dims 4,8 --seed 1");
  ASSERT_EQ(p.code, 0) << p.err;
  std::istringstream lines(p.out);
  std::string line, last;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    last = line;
    ++count;
  }
  EXPECT_EQ(count, 31u);
  const auto summary = nlohmann::json::parse(last).at("summary");
  EXPECT_EQ(summary.at("passed"), 30);
  EXPECT_EQ(summary.at("failed"), 0);

  const CliRun t = run_cli("selftest --trials 5");
  EXPECT_EQ(t.code, 0) << t.out << t.err;
}

TEST(Cli, ListModels) {
  const CliRun r = run_cli("list-models --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 3u);
}

TEST(Cli, ConfigErrorsExitTwo) {
  for (const char* args : {"analyze --model nope", "analyze --param g", "analyze --model triangle --param g=1",
                           "analyze --model chain3 --bipartition 'A|D'", "excited --j 9",
                           "saturate --gammas 1e-2,1e-1", "analyze --format xml", "analyze --jobs 0",
                           "analyze --split weird", "frobnicate", "analyze --model /nonexistent.json"}) {
    const CliRun r = run_cli(args);
    EXPECT_EQ(r.code, 2) << args << ": " << r.err;
    EXPECT_FALSE(r.err.empty()) << args;
  }
}

TEST(Cli, ComputationErrorsExitThree) {
  const auto dir = std::filesystem::temp_directory_path() / "frustra_test_cli_models";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "big.json") << R"({"name": "big", "sites": [2,2,2,2,2,2,2,2,2,2,2,2,2], "terms": []})";
  const CliRun r = run_cli("analyze --model " + (dir / "big.json").string());
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("DimensionCap"), std::string::npos);
  const CliRun ok = run_cli("analyze --model ising2 --split schmidt:0");
  EXPECT_EQ(ok.code, 2) << ok.err;
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputIsReproducible) {
  for (const char* args : {"perturb --trials 12 --seed 7", "excited --model chain3 --j all --seed 3",
                           "sweep --g-grid 0.1:2:20", "saturate --model ising2 --format json"}) {
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(std::string(args) + " --jobs 3");
    ASSERT_EQ(a.code, 0) << args << a.err;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.out, run_cli(args).out) << args;
  }
}

TEST(Cli, WritesToOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "frustra_test_cli_out.csv";
  const CliRun r = run_cli("analyze --model ising2 --format csv --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_NE(header.find("ef_bound"), std::string::npos);
  std::filesystem::remove(path);
}
