#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run_tool(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CNLS_TOOL_PATH + std::string(" ") + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cnls_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path short_config(const fs::path& dir) {
  const fs::path path = dir / "short.cfg";
  std::ofstream(path) << "[grid]\na = 20\nN = 256\n"
                         "[params]\nmu1 = 1\nmu2 = 1\nbeta = -1\n"
                         "[soliton1]\nomega = 1\nv = 0.5\n"
                         "[soliton2]\nomega = 1\nv = -0.5\n"
                         "[run]\nt0 = -10\nt_final = -9.8\ntau = 0.002\n"
                         "snapshot_stride = 50\ndiagnostics_stride = 10\n"
                         "[output]\ndirectory = " << (dir / "out").string() << "\n";
  return path;
}

}  // namespace

TEST(Cli, ManakovEqualFrequencies) {
  const Outcome o = run_tool("manakov --omega1 1 --omega2 1 --v1 1 --v2 -1");
  ASSERT_EQ(o.status, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_NEAR(j["tau1"].get<double>(), -j["tau2"].get<double>(), 1e-15);
  EXPECT_EQ(j["theta1"], j["theta2"]);
  EXPECT_NEAR(j["tau1"].get<double>(), 0.5 * std::log(5.0), 1e-14);
}

TEST(Cli, ManakovDegenerateIsConfigError) {
  EXPECT_EQ(run_tool("manakov --omega1 1 --omega2 1 --v1 1 --v2 1").status, 2);
  EXPECT_EQ(run_tool("manakov --omega1 1").status, 2);
}

TEST(Cli, PresetsWritesFourFiles) {
  const fs::path dir = fresh_dir("presets");
  ASSERT_EQ(run_tool("presets " + dir.string()).status, 0);
  for (const char* name : {"elastic.cfg", "symmetric.cfg", "dispersive.cfg", "reflexion.cfg"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
}

TEST(Cli, RunWritesOutputsWithOverride) {
  const fs::path dir = fresh_dir("run");
  const Outcome o = run_tool("run " + short_config(dir).string() + " --run.cutoff_L=2");
  ASSERT_EQ(o.status, 0) << o.out;
  const fs::path out = dir / "out";
  EXPECT_TRUE(fs::exists(out / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(out / "snapshot_00000100.csv"));
  std::ifstream in(out / "report.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_DOUBLE_EQ(j["t_final"].get<double>(), -9.8);
  // Soliton centred at -4.9: about 4 e^{-9.8} of its mass lies right of 0;
  // the node at x = 0 counts fully to the left, which adds O(h e^{-9.8}).
  EXPECT_NEAR(j["left_mass_1"].get<double>(), 4.0 - 4.0 * std::exp(-9.8), 1e-4);
}

TEST(Cli, EnvironmentSelectsOutputDirectory) {
  const fs::path dir = fresh_dir("env");
  const fs::path target = dir / "elsewhere";
  const Outcome o =
      run_tool("run " + short_config(dir).string(), "CNLS_OUTPUT_DIR=" + target.string());
  ASSERT_EQ(o.status, 0);
  EXPECT_TRUE(fs::exists(target / "report.json"));
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Cli, ConvergenceReportsOrder) {
  const fs::path dir = fresh_dir("conv");
  const Outcome o = run_tool("convergence " + short_config(dir).string() + " --run.tau=0.004");
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_NE(o.out.find("order"), std::string::npos);
}

TEST(Cli, GroundStateCommand) {
  const fs::path dir = fresh_dir("gs");
  const std::string cfg = short_config(dir).string();
  const Outcome o = run_tool("groundstate " + cfg + " --groundstate.masses=4,4 --params.beta=0");
  ASSERT_EQ(o.status, 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "groundstate.csv"));
  std::ifstream in(dir / "out" / "groundstate.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_NEAR(j["omega_1"].get<double>(), 1.0, 1e-3);
  EXPECT_EQ(run_tool("groundstate " + cfg).status, 2);
  EXPECT_EQ(run_tool("groundstate " + cfg + " --groundstate.masses=4,4 --groundstate.max_iter=2")
                .status,
            4);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = fresh_dir("codes");
  const std::string cfg = short_config(dir).string();
  EXPECT_EQ(run_tool("run " + (dir / "missing.cfg").string()).status, 5);
  EXPECT_EQ(run_tool("run " + cfg + " --grid.N=1000").status, 2);
  EXPECT_EQ(run_tool("run " + cfg + " --nonsense").status, 2);
  EXPECT_EQ(run_tool("").status, 2);
  EXPECT_EQ(run_tool("run " + cfg + " --soliton1.omega=1e308").status, 3);
  EXPECT_EQ(run_tool("run " + cfg + " --output.directory=/proc/forbidden/out").status, 5);
}
