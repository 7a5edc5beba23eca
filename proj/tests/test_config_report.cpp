#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rmpslab/config.hpp"
#include "rmpslab/report.hpp"

using namespace rmpslab;
namespace fs = std::filesystem;

namespace {

ExperimentReport tiny_report(const fs::path& out_dir) {
  ExperimentReport rep;
  rep.config.kind = ExperimentKind::NormConcentration;
  rep.config.d = 2;
  rep.config.n = 4;
  rep.config.bond = 2;
  rep.config.samples = 4;
  rep.config.seed = 11;
  rep.config.epsilon = 0.25;
  rep.config.output_dir = out_dir.string();
  rep.seed = 11;
  rep.wallclock_seconds = 0.125;

  QuantityRecord with_exact;
  with_exact.name = "norm_mean";
  with_exact.mean = 0.1 + 0.2;  // deliberately awkward binary doubles
  with_exact.stderr_ = 1.0 / 3.0;
  with_exact.samples = 4;
  with_exact.exact = 0.30000000000000004;
  rep.records.push_back(with_exact);

  QuantityRecord with_bound;
  with_bound.name = "tail_probability";
  with_bound.mean = 0.0;
  with_bound.stderr_ = 0.0;
  with_bound.samples = 4;
  with_bound.bound = 0.0625;
  rep.records.push_back(with_bound);

  QuantityRecord bare;
  bare.name = "norm_fluctuation";
  bare.mean = -0.75;
  bare.samples = 4;
  rep.records.push_back(bare);

  rep.extras["alpha"] = 0.25;
  rep.samples.samples = 4;
  rep.samples.width = 2;
  rep.samples.values = {0.5, 1.0, 1.0 / 3.0, 0.25, -2.0, 7.0, 1e-17, 0.875};
  rep.sample_columns = {"raw", "normalized"};
  rep.csv_quantities = {{"norm_sq", 0, 1}, {"tail_indicator", 1, -1}};
  return rep;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

TEST_SUITE("config_report") {
  TEST_CASE("serialize / parse round trip preserves every field") {
    ExperimentConfig a;
    a.kind = ExperimentKind::Extensivity;
    a.d = 3;
    a.n = 12;
    a.bond = 4;
    a.k = 4;
    a.samples = 5000;
    a.seed = 987654321;
    a.observable = "pauli-z";
    a.output_dir = "runs/ext sweep";
    CHECK(config_equal(parse_config(serialize_config(a)), a));

    ExperimentConfig b;
    b.kind = ExperimentKind::MaxEntropy;
    b.l = 3;
    b.epsilon = 0.125;
    b.observable_file = "/tmp/obs.json";
    b.boundary = BoundaryKind::Open;
    b.samples = 2;
    b.seed = 1;
    CHECK(config_equal(parse_config(serialize_config(b)), b));

    // config_equal is sensitive to any one field
    ExperimentConfig c = a;
    c.seed += 1;
    CHECK(!config_equal(a, c));
    c = a;
    c.k = std::nullopt;
    CHECK(!config_equal(a, c));
  }

  TEST_CASE("key = value text: comments, spacing, quotes") {
    const std::string text =
        "# ring ensemble sweep\n"
        "kind = norm-concentration\n"
        "d=2\n"
        "  n  =  6   # six sites\n"
        "D = 2\n"
        "samples = 500\n"
        "seed = 7\n"
        "epsilon = 0.25\n"
        "observable = 'pauli-z'\n"
        "output_dir = \"out dir\"\n"
        "\n";
    const ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.kind == ExperimentKind::NormConcentration);
    CHECK(cfg.n == 6);
    CHECK(cfg.samples == 500);
    CHECK(cfg.seed == 7);
    CHECK(*cfg.epsilon == 0.25);
    CHECK(cfg.observable == "pauli-z");
    CHECK(cfg.output_dir == "out dir");
  }

  TEST_CASE("config errors name the offending key") {
    const std::string base =
        "kind = local-obs\nd = 2\nn = 4\nD = 2\nsamples = 100\n";

    CHECK_THROWS_WITH_AS(parse_config(base), doctest::Contains("seed"), UsageError);
    CHECK_THROWS_WITH_AS(parse_config(base + "seed = 1\nbond = 3\n"),
                         doctest::Contains("bond"), UsageError);
    CHECK_THROWS_WITH_AS(parse_config("kind = local-obs\nd = 2\nn = abc\nD = 2\nsamples = 1\nseed = 1\n"),
                         doctest::Contains("expected an integer"), UsageError);
    CHECK_THROWS_WITH_AS(parse_config(base + "seed = 1\nepsilon = 0.25extra\n"),
                         doctest::Contains("expected a number"), UsageError);
    CHECK_THROWS_WITH_AS(parse_config(base + "seed = 1\nboundary = twisted\n"),
                         doctest::Contains("boundary"), UsageError);
    CHECK_THROWS_WITH_AS(parse_config("kind local-obs\n"), doctest::Contains("key = value"),
                         UsageError);
    CHECK_THROWS_WITH_AS(parse_config("kind = teleport\nd = 2\nn = 2\nD = 2\nsamples = 2\nseed = 1\n"),
                         doctest::Contains("unknown experiment"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/rmpslab.cfg"), UsageError);
  }

  TEST_CASE("JSON config form") {
    const ExperimentConfig cfg = parse_config(
        R"({"kind": "max-entropy", "d": 2, "n": 4, "D": 3, "l": 2, "samples": 100, "seed": 5})");
    CHECK(cfg.kind == ExperimentKind::MaxEntropy);
    CHECK(cfg.bond == 3);
    CHECK(*cfg.l == 2);

    // string-valued JSON fields work the same way
    const ExperimentConfig strs = parse_config(
        R"({"kind": "frame-potential", "d": "2", "n": "3", "D": "2", "samples": "50", "seed": "9"})");
    CHECK(strs.kind == ExperimentKind::FramePotential);
    CHECK(strs.n == 3);

    CHECK_THROWS_WITH_AS(parse_config("{ nope"), doctest::Contains("invalid JSON"), UsageError);
    CHECK_THROWS_WITH_AS(parse_config("{}"), doctest::Contains("kind"), UsageError);
  }

  TEST_CASE("report JSON carries records, config, and extras") {
    const fs::path dir = fs::temp_directory_path() / ("rmpslab_report_" + std::to_string(::getpid()));
    const ExperimentReport rep = tiny_report(dir);
    const nlohmann::json j = report_to_json(rep);

    CHECK(j.at("experiment") == "norm-concentration");
    CHECK(j.at("all_pass") == true);
    CHECK(j.at("config").at("epsilon").get<double>() == 0.25);
    CHECK(j.at("extras").at("alpha").get<double>() == 0.25);
    CHECK(j.at("seed").get<std::uint64_t>() == 11);

    REQUIRE(j.at("records").size() == 3);
    const auto& r0 = j.at("records")[0];
    CHECK(r0.at("name") == "norm_mean");
    CHECK(r0.contains("exact_value"));
    CHECK(!r0.contains("bound_value"));
    const auto& r1 = j.at("records")[1];
    CHECK(r1.contains("bound_value"));
    CHECK(!r1.contains("exact_value"));
    CHECK(r1.at("pass") == true);
    CHECK(!j.at("records")[2].contains("exact_value"));

    // doubles survive dump -> parse bit-for-bit
    const nlohmann::json back = nlohmann::json::parse(j.dump(2));
    CHECK(back.at("records")[0].at("mean").get<double>() == 0.1 + 0.2);
    CHECK(back.at("records")[0].at("stderr").get<double>() == 1.0 / 3.0);
    CHECK(back.at("wallclock_seconds").get<double>() == 0.125);
  }

  TEST_CASE("report writers produce the three artifacts") {
    const fs::path dir = fs::temp_directory_path() / ("rmpslab_artifacts_" + std::to_string(::getpid()));
    const ExperimentReport rep = tiny_report(dir);

    const std::string jpath = write_report_json(rep);
    const std::string cpath = write_samples_csv(rep);
    const std::string ppath = write_plot_script(rep);
    CHECK(fs::exists(jpath));
    CHECK(fs::exists(cpath));
    CHECK(fs::exists(ppath));

    std::ifstream jin(jpath);
    nlohmann::json parsed;
    jin >> parsed;
    CHECK(parsed.at("all_pass") == true);

    const std::vector<std::string> lines = read_lines(cpath);
    REQUIRE(lines.size() == 1 + rep.samples.samples * rep.csv_quantities.size());
    CHECK(lines[0] == "sample_index,seed_index,quantity,raw_value,normalized_value");

    // row layout: quantity name, raw column, normalized column (repeat when absent)
    const std::vector<std::string> row0 = split_csv(lines[1]);
    REQUIRE(row0.size() == 5);
    CHECK(row0[0] == "0");
    CHECK(row0[2] == "norm_sq");
    CHECK(std::stod(row0[3]) == 0.5);
    CHECK(std::stod(row0[4]) == 1.0);
    const std::vector<std::string> row1 = split_csv(lines[2]);
    CHECK(row1[2] == "tail_indicator");
    CHECK(row1[3] == row1[4]);
    // shortest-round-trip doubles: parsing the text recovers the exact value
    const std::vector<std::string> row2 = split_csv(lines[3]);
    CHECK(std::stod(row2[3]) == 1.0 / 3.0);
    const std::vector<std::string> row6 = split_csv(lines[7]);
    CHECK(std::stod(row6[3]) == 1e-17);

    fs::remove_all(dir);
  }

  TEST_CASE("plot scripts: record points or sweep curves") {
    const fs::path dir = fs::temp_directory_path() / ("rmpslab_plots_" + std::to_string(::getpid()));
    ExperimentReport rep = tiny_report(dir);

    const std::string pts = render_plot_script(rep);
    CHECK(pts.find("plot") != std::string::npos);
    CHECK(pts.find("$records") != std::string::npos);
    CHECK(pts.find("norm_mean") != std::string::npos);
    CHECK(pts.find("nan") != std::string::npos);  // absent exact/bound columns
    CHECK(pts.find("pngcairo") != std::string::npos);

    rep.extras["sweep"] = nlohmann::json::array({
        {{"n", 4}, {"s2_estimate", 0.5}, {"s2_exact", 0.52}},
        {{"n", 8}, {"s2_estimate", 1.1}, {"s2_exact", 1.04}},
    });
    const std::string sweep = render_plot_script(rep);
    CHECK(sweep.find("$sweep") != std::string::npos);
    CHECK(sweep.find("chain length") != std::string::npos);

    rep.records.clear();
    CHECK_THROWS_AS(render_plot_script(rep), std::invalid_argument);
  }
}
