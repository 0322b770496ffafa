#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "voi/config_io.hpp"
#include "voi/errors.hpp"
#include "voi/experiments.hpp"

using namespace voi;
using namespace voi::experiments;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "voi_cli");
  std::ostringstream out, err;
  const int status = voi::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "voi_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const std::string kConfigs = VOI_CONFIG_DIR;

}  // namespace

TEST_CASE("gamma_grid includes both endpoints exactly") {
  const auto g = gamma_grid(1.0 / 9.0, 9.0, 1000);
  CHECK(g.size() == 1000);
  CHECK(g.front() == 1.0 / 9.0);
  CHECK(g.back() == 9.0);
  CHECK(std::is_sorted(g.begin(), g.end()));

  const auto lg = gamma_grid(1.0 / 9.0, 9.0, 5, Spacing::Log);
  CHECK(lg[2] == doctest::Approx(1.0));
  CHECK(lg.back() == 9.0);

  CHECK_THROWS_AS(gamma_grid(0.1, 9.0, 10), DomainError);
  CHECK_THROWS_AS(gamma_grid(1.0, 10.0, 10), DomainError);
  CHECK_THROWS_AS(gamma_grid(3.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(gamma_grid(1.0, 3.0, 1), DomainError);
}

TEST_CASE("gamma_sweep rows") {
  const auto config = default_safety_config();
  const auto rows = gamma_sweep(config, 1.0, 5.0, 5);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2].gamma == 3.0);
  CHECK(std::abs(rows[2].cr) < 1e-12);
  CHECK(rows[2].is_consistent);
  for (const auto& r : rows) CHECK(std::abs(r.scores[0] + r.scores[1] - 1.0) < 1e-9);

  const auto uniform = io::load_voi_config(kConfigs + "/safety_uniform.json");
  for (const auto& r : gamma_sweep(uniform, 1.0 / 9.0, 9.0, 50)) {
    CHECK(r.scores[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.scores[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("consistent_region examples") {
  std::vector<SweepRow> rows = {{1, 0, true, {}}, {2, 0, true, {}}, {3, 0, true, {}}};
  auto region = consistent_region(rows);
  REQUIRE(region.size() == 1);
  CHECK(region[0].lo == 1);
  CHECK(region[0].hi == 3);

  for (auto& r : rows) r.is_consistent = false;
  CHECK(consistent_region(rows).empty());

  rows = {{1, 0, true, {}}, {2, 0, false, {}}, {3, 0, true, {}}, {4, 0, true, {}}};
  region = consistent_region(rows);
  REQUIRE(region.size() == 2);
  CHECK(region[1].lo == 3);
  CHECK(region[1].hi == 4);
}

TEST_CASE("default safety sweep: consistent region endpoints") {
  // Frozen from a dense-eigensolver sweep (numpy.linalg.eig, CR <= 0.10,
  // RI(3) = 0.58) over the same 1000-point linear grid. The continuous
  // boundary lies at gamma ~ 1.08516 and ~ 8.29373.
  const auto rows = gamma_sweep(default_safety_config(), 1.0 / 9.0, 9.0, 1000);
  const auto region = consistent_region(rows);
  REQUIRE(region.size() == 1);
  CHECK(std::abs(region[0].lo - 1.089867645423201) < 1e-9);
  CHECK(std::abs(region[0].hi - 8.288177065954843) < 1e-9);
  CHECK(region[0].lo <= 3.0);
  CHECK(region[0].hi >= 3.0);
}

TEST_CASE("sweep CSV round trip to printed precision") {
  const auto config = default_safety_config();
  const auto rows = gamma_sweep(config, 1.0 / 9.0, 9.0, 37);
  std::stringstream csv;
  write_sweep_csv(csv, config, rows);
  CHECK(csv.str().rfind("gamma,cr,consistent,voi_surrounding,voi_position\n", 0) == 0);
  const auto back = read_sweep_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(back[i].gamma - rows[i].gamma) <= 5e-7);
    CHECK(std::abs(back[i].cr - rows[i].cr) <= 5e-7);
    CHECK(back[i].is_consistent == rows[i].is_consistent);
    for (std::size_t s = 0; s < 2; ++s) CHECK(std::abs(back[i].scores[s] - rows[i].scores[s]) <= 5e-7);
  }
}

TEST_CASE("cli check prints weights and CR") {
  const auto r = run_cli({"check", "--config", kConfigs + "/safety.json", "--gamma", "3"});
  CHECK(r.status == 0);
  CHECK(r.out.find("time_dependency 0.4286") != std::string::npos);
  CHECK(r.out.find("space_dependency 0.4286") != std::string::npos);
  CHECK(r.out.find("information_quality 0.1429") != std::string::npos);
  CHECK(r.out.find("CR=0.0000") != std::string::npos);
  CHECK(r.out.find(" consistent") != std::string::npos);
}

TEST_CASE("cli sweep writes deterministic CSV") {
  const auto a = temp_path("sweep_a.csv");
  const auto b = temp_path("sweep_b.csv");
  auto r = run_cli({"sweep", "--config", kConfigs + "/safety.json", "--out", a.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("consistent region: [1.089868, 8.288177]") != std::string::npos);
  r = run_cli({"sweep", "--config", kConfigs + "/safety.json", "--out", b.string()});
  CHECK(r.status == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("gamma,cr,consistent,voi_surrounding,voi_position\n", 0) == 0);
  std::istringstream in(text);
  const auto rows = read_sweep_csv(in);
  CHECK(rows.size() == 1000);
  CHECK(rows.front().gamma == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
  CHECK(rows.back().gamma == 9.0);
}

TEST_CASE("cli simulate compares schedulers") {
  const auto out = temp_path("metrics.csv");
  const auto log = temp_path("log.csv");
  const auto log2 = temp_path("log2.csv");
  auto r = run_cli({"simulate", "--scenario", kConfigs + "/overload_scenario.json", "--out",
                out.string(), "--log", log.string()});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("voi: delivered_value=") != std::string::npos);
  CHECK(r.out.find("fifo: delivered_value=") != std::string::npos);
  CHECK(r.out.find("offered load: 2.000 x capacity") != std::string::npos);

  std::istringstream metrics(slurp(out));
  std::string header, voi_line, fifo_line;
  std::getline(metrics, header);
  std::getline(metrics, voi_line);
  std::getline(metrics, fifo_line);
  CHECK(header.rfind("scheduler,slots,generated,delivered,dropped,residual,delivered_value", 0) == 0);
  const auto value_of = [](const std::string& line) {
    std::istringstream s(line);
    std::string field;
    for (int i = 0; i < 7; ++i) std::getline(s, field, ',');
    return std::stod(field);
  };
  CHECK(voi_line.rfind("voi,", 0) == 0);
  CHECK(fifo_line.rfind("fifo,", 0) == 0);
  CHECK(value_of(voi_line) >= value_of(fifo_line));

  r = run_cli({"simulate", "--scenario", kConfigs + "/overload_scenario.json", "--log", log2.string()});
  CHECK(r.status == 0);
  CHECK(slurp(log) == slurp(log2));
  CHECK(slurp(log).rfind("slot,message_id,source,effective_voi,size_bits\n", 0) == 0);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli({}).status == 2);
  CHECK(run_cli({"check"}).status == 2);
  auto r = run_cli({"check", "--config", kConfigs + "/missing.json"});
  CHECK(r.status == 2);
  CHECK(r.err.find("missing.json") != std::string::npos);

  const auto broken = temp_path("broken.json");
  {
    auto doc = io::to_json(default_safety_config());
    doc.erase("attribute_matrix");
    std::ofstream(broken) << doc.dump();
  }
  r = run_cli({"check", "--config", broken.string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("attribute_matrix") != std::string::npos);

  r = run_cli({"check", "--config", kConfigs + "/safety.json", "--gamma", "10"});
  CHECK(r.status == 3);
  r = run_cli({"sweep", "--config", kConfigs + "/safety.json", "--gamma-max", "12"});
  CHECK(r.status == 3);
  CHECK(run_cli({"--help"}).status == 0);
}
