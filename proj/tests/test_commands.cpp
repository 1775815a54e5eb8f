#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qflat/commands.hpp"
#include "support.hpp"

using namespace qflat;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("qflat_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = s.find(',', start);
      cells.push_back(s.substr(start, comma == std::string::npos ? std::string::npos
                                                                 : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      t.header = split(line);
      first = false;
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

double cell(const Table& t, std::size_t row, const std::string& column) {
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (t.header[c] == column) return std::strtod(t.rows[row][c].c_str(), nullptr);
  FAIL("no column " + column);
  return 0.0;
}

ScenarioConfig reference_config(const fs::path& dir, std::size_t steps = 2000) {
  ScenarioConfig c;
  c.alpha_rad = -2.0 * pi / 3.0;
  c.beta_rad = pi / 3.0;
  c.transfer_time = 10.0;
  c.branch = Branch::b;
  c.steps = steps;
  c.g2_profile = "linear";
  c.g3_profile = "cubic";
  c.output_prefix = (dir / "run").string();
  c.emit_svg = false;
  return c;
}

}  // namespace

TEST_CASE("design command writes the pointwise synthesis table", "[commands]") {
  const fs::path dir = fresh_dir("design");
  const ScenarioConfig cfg = reference_config(dir, 100);
  cmd_design(cfg);

  const Table t = parse_csv(slurp(dir / "run_design.csv"));
  REQUIRE(t.header ==
          std::vector<std::string>{"t", "g1", "g2", "g3", "u1", "u2"});
  REQUIRE(t.rows.size() == 101);

  CHECK(cell(t, 0, "t") == 0.0);
  CHECK(cell(t, 0, "g1") == 0.0);
  CHECK(cell(t, 0, "g2") == 0.0);
  CHECK(cell(t, 0, "g3") == 0.0);
  CHECK(cell(t, 0, "u2") == Catch::Approx(pi / 20.0).margin(1e-11));
  CHECK(cell(t, 0, "u1") == Catch::Approx(-0.5).margin(1e-11));

  CHECK(cell(t, 100, "t") == 10.0);
  CHECK(cell(t, 100, "g2") == Catch::Approx(pi / 2.0).margin(1e-12));
  CHECK(cell(t, 100, "g3") == Catch::Approx(5.0 * pi / 6.0).margin(1e-12));
}

TEST_CASE("zero-span g3 scenario emits an all-zero u1 column", "[commands]") {
  const fs::path dir = fresh_dir("design_zero");
  ScenarioConfig cfg = reference_config(dir, 50);
  cfg.alpha_rad = 0.2;
  cfg.beta_rad = pi / 2.0 - 0.2;
  cfg.g3_profile = "cubic";
  cmd_design(cfg);
  const Table t = parse_csv(slurp(dir / "run_design.csv"));
  for (std::size_t r = 0; r < t.rows.size(); ++r) CHECK(cell(t, r, "u1") == 0.0);
}

TEST_CASE("simulate command writes the pinned trajectory schema", "[commands]") {
  const fs::path dir = fresh_dir("simulate");
  const ScenarioConfig cfg = reference_config(dir);
  cmd_simulate(cfg);

  const std::string text = slurp(dir / "run_traj.csv");
  CHECK(text.rfind("t,g1,g2,g3,u1,u2,x1,x2,x3,x4,pop_w,pop_v,norm_err\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);  // LF only

  const Table t = parse_csv(text);
  REQUIRE(t.rows.size() == cfg.steps + 1);

  CHECK(cell(t, 0, "pop_w") == 0.0);
  CHECK(cell(t, 0, "pop_v") == 1.0);
  CHECK(cell(t, 0, "norm_err") == 0.0);

  const std::size_t last = t.rows.size() - 1;
  CHECK(std::abs(cell(t, last, "x3")) <= 1e-6);
  CHECK(std::abs(cell(t, last, "x4")) <= 1e-6);
  CHECK(cell(t, last, "pop_w") >= 1.0 - 1e-8);
}

TEST_CASE("identical scenarios produce byte-identical outputs", "[commands]") {
  const fs::path dir1 = fresh_dir("determinism1");
  const fs::path dir2 = fresh_dir("determinism2");
  ScenarioConfig a = reference_config(dir1, 500);
  ScenarioConfig b = reference_config(dir2, 500);
  cmd_simulate(a);
  cmd_simulate(b);
  cmd_design(a);
  cmd_design(b);
  CHECK(slurp(dir1 / "run_traj.csv") == slurp(dir2 / "run_traj.csv"));
  CHECK(slurp(dir1 / "run_design.csv") == slurp(dir2 / "run_design.csv"));
}

TEST_CASE("design table matches the trajectory columns", "[commands]") {
  const fs::path dir = fresh_dir("consistency");
  const ScenarioConfig cfg = reference_config(dir, 400);
  cmd_design(cfg);
  cmd_simulate(cfg);
  const Table design = parse_csv(slurp(dir / "run_design.csv"));
  const Table traj = parse_csv(slurp(dir / "run_traj.csv"));
  REQUIRE(design.rows.size() == traj.rows.size());
  for (std::size_t r = 0; r < design.rows.size(); ++r)
    for (const char* col : {"g1", "g2", "g3", "u1", "u2"})
      CHECK(std::abs(cell(design, r, col) - cell(traj, r, col)) <= 1e-9);
}

TEST_CASE("simulate writes SVG charts when asked", "[commands]") {
  const fs::path dir = fresh_dir("svg");
  ScenarioConfig cfg = reference_config(dir, 300);
  cfg.emit_svg = true;
  cmd_simulate(cfg);
  for (const char* name :
       {"run_base_functions.svg", "run_controls.svg", "run_states.svg", "run_populations.svg"}) {
    const std::string text = slurp(dir / name);
    CAPTURE(name);
    CHECK(text.rfind("<svg", 0) == 0);
    CHECK(text.find("<polyline") != std::string::npos);
  }
}

TEST_CASE("simulate writes the lab-frame table when energies are set", "[commands]") {
  const fs::path dir = fresh_dir("lab");
  ScenarioConfig cfg = reference_config(dir, 200);
  cfg.energy_levels = EnergyLevels{1.0, 2.5};
  cmd_simulate(cfg);
  const Table t = parse_csv(slurp(dir / "run_lab.csv"));
  REQUIRE(t.header.size() == 7);
  REQUIRE(t.rows.size() == 201);
  // |Omega| = |u| on every row
  const Table traj = parse_csv(slurp(dir / "run_traj.csv"));
  for (std::size_t r = 0; r < t.rows.size(); r += 20) {
    const double mag_lab = std::hypot(cell(t, r, "omega_re"), cell(t, r, "omega_im"));
    const double mag_u = std::hypot(cell(traj, r, "u1"), cell(traj, r, "u2"));
    CHECK(mag_lab == Catch::Approx(mag_u).margin(1e-9));
  }
}

TEST_CASE("verify command scores and reports", "[commands]") {
  const fs::path dir = fresh_dir("verify");
  const ScenarioConfig cfg = reference_config(dir, 10000);

  const VerificationReport good = cmd_verify(cfg, 1e-5);
  CHECK(good.passed);
  const std::string report = slurp(dir / "run_verify.txt");
  CHECK(report.find("passed = true") != std::string::npos);
  CHECK(report.find("final_state_error_inf = ") != std::string::npos);
  CHECK(report.find("oracle_mismatch_inf = ") != std::string::npos);

  // far too coarse a grid misses the tolerance
  ScenarioConfig coarse = reference_config(dir, 10);
  coarse.output_prefix = (dir / "coarse").string();
  const VerificationReport bad = cmd_verify(coarse, 1e-5);
  CHECK_FALSE(bad.passed);
  CHECK(slurp(dir / "coarse_verify.txt").find("passed = false") != std::string::npos);
}

TEST_CASE("verify refuses structurally degenerate scenarios up front", "[commands]") {
  ScenarioConfig cfg = reference_config(fresh_dir("degenerate"), 100);
  cfg.g2_profile = "poly:0.3";  // constant g2
  CHECK_THROWS_AS(run_verify(cfg, 1e-5), DegenerateProfile);
}

TEST_CASE("beta sweep hits every target", "[commands]") {
  const fs::path dir = fresh_dir("sweep");
  ScenarioConfig cfg = reference_config(dir, 4000);
  cfg.g2_profile = "auto";
  cfg.g3_profile = "auto";

  CHECK(cmd_sweep(cfg, SweepParam::beta, 0.0, pi / 3.0, 3, 1e-5));
  const Table t = parse_csv(slurp(dir / "run_sweep.csv"));
  REQUIRE(t.rows.size() == 3);
  REQUIRE(t.header == std::vector<std::string>{"parameter", "value", "g3_target",
                                               "final_state_error_inf", "residual_population",
                                               "status"});
  // g3 targets: pi/2 - (alpha + beta) without range reduction
  CHECK(cell(t, 0, "g3_target") == Catch::Approx(pi / 2.0 + 2.0 * pi / 3.0).margin(1e-12));
  CHECK(cell(t, 1, "g3_target") == Catch::Approx(pi).margin(1e-12));
  CHECK(cell(t, 2, "g3_target") == Catch::Approx(5.0 * pi / 6.0).margin(1e-12));
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(t.rows[r][0] == "beta");
    CHECK(t.rows[r][5] == "ok");
    CHECK(cell(t, r, "final_state_error_inf") <= 1e-5);
  }
}

TEST_CASE("sweep with count 1 equals a single verify", "[commands]") {
  const fs::path dir = fresh_dir("sweep1");
  const ScenarioConfig cfg = reference_config(dir, 3000);
  const std::vector<SweepRow> rows =
      run_sweep(cfg, SweepParam::beta, cfg.beta_rad, cfg.beta_rad, 1, 1e-5);
  REQUIRE(rows.size() == 1);
  const VerificationReport direct = run_verify(cfg, 1e-5);
  CHECK(rows[0].report.final_state_error_inf == direct.final_state_error_inf);
  CHECK(rows[0].report.passed == direct.passed);
}

TEST_CASE("horizon sweep passes and controls shrink with T", "[commands]") {
  const fs::path dir = fresh_dir("sweepT");
  ScenarioConfig cfg = reference_config(dir, 4000);
  const std::vector<SweepRow> rows = run_sweep(cfg, SweepParam::transfer_time, 5.0, 20.0, 3, 1e-5);
  REQUIRE(rows.size() == 3);
  for (const SweepRow& r : rows) {
    CAPTURE(r.value);
    CHECK(r.status == "ok");
  }

  // recorded, not asserted as a strict law: peak |u2| roughly scales as 1/T
  std::vector<double> peaks;
  for (const double T : {5.0, 10.0, 20.0}) {
    const FlatDesign d = make_branch_b_design(
        boundary_targets(TransferSpec{cfg.alpha_rad, cfg.beta_rad, T, Branch::b}).g3_T, T);
    double peak = 0.0;
    for (int k = 0; k <= 200; ++k)
      peak = std::max(peak, synthesize_controls(d, T * k / 200.0).u2);
    peaks.push_back(peak);
  }
  INFO("peak u2 at T=5,10,20: " << peaks[0] << ", " << peaks[1] << ", " << peaks[2]);
  CHECK(peaks[0] > peaks[1]);
  CHECK(peaks[1] > peaks[2]);
}

TEST_CASE("sweep records per-row failures and keeps going", "[commands]") {
  const fs::path dir = fresh_dir("sweep_err");
  ScenarioConfig cfg = reference_config(dir, 1000);
  // T <= 0 rows must fail row-locally, the rest still run
  const std::vector<SweepRow> rows =
      run_sweep(cfg, SweepParam::transfer_time, -5.0, 10.0, 2, 1e-5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status != "ok");
  CHECK(rows[1].status == "ok");
  CHECK(rows[1].report.passed);
}
