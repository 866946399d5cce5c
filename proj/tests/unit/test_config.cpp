#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fraclaw/cli.hpp"
#include "fraclaw/config.hpp"
#include "fraclaw/errors.hpp"
#include "generators.hpp"

using namespace fraclaw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const InvalidParameter& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config takes the documented defaults") {
  const auto o = parse_config("q = 1.3\nalpha = 0.5\ninitial { kind = gaussian mass = 1 }\n");
  CHECK(o.solver.grid.size() == 4096);
  CHECK(o.solver.grid.half_width() == 100.0);
  CHECK(o.solver.scheme == Scheme::etd2);
  CHECK(o.solver.dt == 1e-3);
  CHECK(o.solver.spec.kind == OperatorKind::dx_weyl_marchaud);
  CHECK(o.initial.width == 1.0);
  CHECK(o.warnings.empty());
}

TEST_CASE("supercritical exponent is accepted with a note") {
  const auto o = parse_config("q = 1.3\nalpha = 0.1\n");
  REQUIRE(o.warnings.size() == 1);
  CHECK(o.warnings[0].find("supercritical") != std::string::npos);
}

TEST_CASE("range violations name the condition") {
  CHECK(message_of("beta = 1.5\ngamma = 0.8\n").find("|gamma| <= min(beta, 2 - beta)") !=
        std::string::npos);
  CHECK(message_of("q = 0.9\n").find("q > 1") != std::string::npos);
  CHECK(message_of("n = 1000\n").find("power of two") != std::string::npos);
  CHECK(message_of("alpha = 0.5\nbeta = 1.6\ngamma = 0.4\n").find("alpha fixes") != std::string::npos);
  CHECK(message_of("snapshot_times = 2, 1\n").find("increasing") != std::string::npos);
  CHECK(message_of("half_width = 10\n").find("2 radius") != std::string::npos);
}

TEST_CASE("grammar errors") {
  CHECK(message_of("dtt = 1\n").find("unknown key 'dtt'") != std::string::npos);
  CHECK(message_of("q = 1.3\nq = 1.2\n").find("duplicate") != std::string::npos);
  CHECK(message_of("q = abc\n").find("expects a number") != std::string::npos);
  CHECK(message_of("q 1.3\n").find("key = value") != std::string::npos);
  CHECK(message_of("initial {\n kind = box\n").find("not closed") != std::string::npos);
  CHECK(message_of("initial { shape = box }\n").find("unknown key 'initial.shape'") !=
        std::string::npos);
  CHECK(message_of("initial { kind = delta }\n").find("gaussian or box") != std::string::npos);
}

TEST_CASE("block, dotted keys and comments are equivalent") {
  const auto a = parse_config("initial {\n  kind = box  # note\n  mass = 2\n  width=3\n}\n");
  const auto b = parse_config("initial.kind = box\ninitial.mass = 2\ninitial.width = 3\n");
  const auto c = parse_config("initial { kind = box, mass = 2; width = 3 }\n");
  for (const auto* o : {&a, &b, &c}) {
    CHECK(o->initial.kind == InitialProfile::Kind::box);
    CHECK(o->initial.mass == 2.0);
    CHECK(o->initial.width == 3.0);
  }
}

TEST_CASE("Riesz-Feller operator from beta and gamma") {
  const auto o = parse_config("beta = 1.6\ngamma = -0.2\nq = 1.2\n");
  CHECK(o.solver.spec.kind == OperatorKind::riesz_feller);
  CHECK(o.solver.spec.gamma == -0.2);
}

TEST_CASE("property: canonical form round-trips") {
  testing::Generator gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream text;
    text << "q = " << format_number(gen.uniform(1.05, 1.4)) << "\n";
    if (trial % 2) {
      text << "alpha = " << format_number(gen.uniform(0.45, 0.95)) << "\n";
    } else {
      const double beta = gen.uniform(1.45, 1.95);
      text << "beta = " << format_number(beta) << "\ngamma = "
           << format_number(gen.uniform(-1.0, 1.0) * (2.0 - beta)) << "\n";
    }
    text << "dt = " << format_number(gen.uniform(1e-4, 1e-2)) << "\n";
    text << "n = " << (1 << gen.integer(8, 14)) << "\n";
    const auto o = parse_config(text.str());
    const std::string canon = format_config(o);
    CHECK(format_config(parse_config(canon)) == canon);
  }
}

TEST_CASE("property: numbers survive the CSV format exactly") {
  testing::Generator gen(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-300, 300));
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("environment overrides") {
  auto entries = parse_entries("dt = 1e-3\n");
  apply_env_overrides(entries, [](const char* name) -> const char* {
    const std::string n(name);
    if (n == "FRACLAW_DT") return "2e-3";
    if (n == "FRACLAW_INITIAL_MASS") return "3";
    if (n == "FRACLAW_Q") return "  ";
    return nullptr;
  });
  const auto o = build_options(entries);
  CHECK(o.solver.dt == 2e-3);
  CHECK(o.initial.mass == 3.0);
  CHECK(o.solver.q == 1.3);
}

TEST_CASE("run writes reproducible artifacts and leaves the config alone") {
  const fs::path dir = fs::temp_directory_path() / "fraclaw_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "small.cfg";
  const std::string text =
      "q = 1.3\nalpha = 0.5\nn = 1024\nhalf_width = 50\nt_end = 1\n"
      "snapshot_times = 0.5, 1\nradius = 5\ntail_radii = 5, 10\nlambda_list = 1, 2\n";
  std::ofstream(cfg) << text;

  RunManifest m;
  m.config_path = cfg.string();
  std::ostringstream log;

  m.check_only = true;
  m.out_dir = (dir / "none").string();
  CHECK(run(m, log) == 0);
  CHECK_FALSE(fs::exists(dir / "none"));
  m.check_only = false;

  for (Command c : {Command::kernel, Command::solve, Command::sweep}) {
    m.command = c;
    m.out_dir = (dir / ("a_" + to_string(c))).string();
    CHECK(run(m, log) == 0);
    m.out_dir = (dir / ("b_" + to_string(c))).string();
    m.workers = 2;
    CHECK(run(m, log) == 0);
    m.workers = 1;
    for (const auto& entry : fs::directory_iterator(dir / ("a_" + to_string(c)))) {
      const fs::path twin = dir / ("b_" + to_string(c)) / entry.path().filename();
      CHECK(slurp(entry.path()) == slurp(twin));
    }
    CHECK(fs::exists(dir / ("a_" + to_string(c)) / "summary.txt"));
    CHECK(fs::exists(dir / ("a_" + to_string(c)) / "plot.gp"));
  }
  CHECK(fs::exists(dir / "a_kernel" / "kernel_decay.csv"));
  CHECK(fs::exists(dir / "a_sweep" / "diagnostics_lambda2.csv"));
  CHECK(slurp(cfg) == text);

  m.config_path = (dir / "missing.cfg").string();
  CHECK(run(m, log) == 2);
  CHECK(command_from_string("sweep") == Command::sweep);
  CHECK_THROWS_AS(command_from_string("plot"), InvalidParameter);
}
