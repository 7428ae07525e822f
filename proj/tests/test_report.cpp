#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "solhp/report.hpp"
#include "support.hpp"

using namespace solhp;
using solhp::testing::genus2_with;

namespace {

namespace fs = std::filesystem;

std::pair<OJson, int> run(Command c, const std::string& text = std::string(kGenus2Json),
                          std::vector<std::pair<std::string, std::string>> sets = {}, bool decreasing = false) {
  RunOptions o;
  o.command = c;
  o.input_text = text;
  o.sets = std::move(sets);
  o.decreasing = decreasing;
  return run_pipeline(o);
}

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "solhp_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

int cli(const std::string& args) {
  std::string cmd = std::string("\"") + SOLHP_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

TEST(Report, ValidateFixture) {
  auto [r, code] = run(Command::Validate);
  EXPECT_EQ(code, kOk);
  EXPECT_TRUE(r["validation"]["passed"].get<bool>());
  EXPECT_EQ(r["boundary"]["k"], 2);
  EXPECT_EQ(r["warnings"].size(), 1u);
  EXPECT_FALSE(r.contains("deformation"));
}

TEST(Report, AnalyzeReportsDimensionMismatch) {
  auto [r, code] = run(Command::Analyze);
  EXPECT_EQ(code, kVerification);
  EXPECT_EQ(r["dimensions"]["dim_Z1"], 4);
  EXPECT_EQ(r["dimensions"]["dim_H1"], 1);
  EXPECT_FALSE(r["dimensions"]["h1_equals_k"].get<bool>());
  EXPECT_TRUE(r["blocks"]["K_equals_minus_2D"].get<bool>());
  EXPECT_EQ(r["cohomology"]["pairing_a_b"], "-2*r");
  std::string text = render_text(r);
  EXPECT_NE(text.find("dim H^1 = 1, k = 2 (mismatch)"), std::string::npos) << text;
}

TEST(Report, AnalyzeSyntheticAgrees) {
  auto [r, code] = run(Command::Analyze, solhp::testing::torus_input(2, solhp::testing::Braid::Swap));
  EXPECT_EQ(code, kOk);
  EXPECT_TRUE(r["dimensions"]["h1_equals_k"].get<bool>());
  EXPECT_NE(render_text(r).find("dim H^1 = 1 = k"), std::string::npos);
}

TEST(Report, FullReportSections) {
  auto [r, code] = run(Command::Report);
  EXPECT_EQ(code, kVerification);  // only the dimension check fails
  int failed = 0;
  for (const auto& c : r["checks"])
    if (!c["passed"].get<bool>()) {
      ++failed;
      EXPECT_EQ(c["check"], "dim H^1 = k");
    }
  EXPECT_EQ(failed, 1);
  EXPECT_TRUE(r["deformation"]["oracle_passed"].get<bool>());
  EXPECT_EQ(r["deformation"]["assignment"]["y6"]["value"], "-2*r");
  EXPECT_EQ(r["deformation"]["assignment"]["y6"]["source"], "constraint");
  EXPECT_TRUE(r["holonomy"]["hp_form"].get<bool>());
  EXPECT_TRUE(r["holonomy"]["sol_limit"]["passed"].get<bool>());
  EXPECT_EQ(r["cone"]["omega_tot"], "-4*r");
  EXPECT_EQ(r["cone"]["components"][1]["A"], "-5-1*r");
  EXPECT_EQ(r["exit_status"], 2);
}

TEST(Report, Deterministic) {
  auto a = run(Command::Report).first.dump();
  auto b = run(Command::Report).first.dump();
  EXPECT_EQ(a, b);
  EXPECT_NO_THROW((void)nlohmann::json::parse(a));
}

TEST(Report, LiteralsAreCanonicalized) {
  auto [r, code] = run(Command::Validate, genus2_with("lambda", R"("(10+2*r)/4")"));
  EXPECT_EQ(code, kOk);
  EXPECT_EQ(r["input"]["lambda"], "(5+1*r)/2");
}

TEST(Report, SetParameters) {
  EXPECT_EQ(run(Command::Deform, std::string(kGenus2Json), {{"y5", "0"}, {"y6", "-2*r"}}).second, kOk);
  auto [bad, code] = run(Command::Deform, std::string(kGenus2Json), {{"y5", "1"}});
  EXPECT_EQ(code, kVerification);
  EXPECT_FALSE(bad["deformation"].contains("assignment"));
  EXPECT_EQ(run(Command::Deform, std::string(kGenus2Json), {{"y1", "1"}}).second, kUsage);
  EXPECT_EQ(run(Command::Deform, std::string(kGenus2Json), {{"y5", "1+"}}).second, kUsage);
}

TEST(Report, DecreasingFlag) {
  auto [r, code] = run(Command::Cone, std::string(kGenus2Json), {}, true);
  EXPECT_EQ(code, kVerification);
  auto flipped = genus2_with("mu_s", R"(["(-3+1*r)/2", "(3-1*r)/2", "1", "-1", "0", "0"])");
  EXPECT_EQ(run(Command::Cone, flipped, {}, true).second, kValidation);
  auto [t, tc] = run(Command::Cone, solhp::testing::torus_input(3, solhp::testing::Braid::ThreeCycle), {}, true);
  EXPECT_EQ(tc, kOk);
  EXPECT_TRUE(t["cone"]["decreasing"].get<bool>());
}

TEST(Report, ErrorObjects) {
  auto [r, code] = run(Command::Validate, "{ not json");
  EXPECT_EQ(code, kUsage);
  EXPECT_EQ(r["error"]["module"], "presentation");
  auto [v, vc] = run(Command::Validate, genus2_with("lambda", R"("1")"));
  EXPECT_EQ(vc, kValidation);
  EXPECT_NE(v["error"]["message"].get<std::string>().find("dilatation must exceed 1"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  fs::path good = temp_file("good.json", std::string(kGenus2Json));
  fs::path lam = temp_file("lambda.json", genus2_with("lambda", R"("1")"));
  fs::path broken = temp_file("broken.json", "{\"disc\": 21,");
  fs::path out = fs::temp_directory_path() / "solhp_tests" / "out.json";

  EXPECT_EQ(cli("validate --fixture genus2"), 0);
  EXPECT_EQ(cli("validate --input \"" + good.string() + "\""), 0);
  EXPECT_EQ(cli("analyze --fixture genus2"), 2);
  EXPECT_EQ(cli("report --fixture genus2"), 2);
  EXPECT_EQ(cli("deform --fixture genus2"), 0);
  EXPECT_EQ(cli("deform --fixture genus2 --set y5=0 --set 'y6=-2*r'"), 0);
  EXPECT_EQ(cli("deform --fixture genus2 --set y5=1"), 2);
  EXPECT_EQ(cli("deform --fixture genus2 --set y9=1"), 3);
  EXPECT_EQ(cli("deform --fixture genus2 --set y5"), 3);
  EXPECT_EQ(cli("holonomy --fixture genus2"), 0);
  EXPECT_EQ(cli("cone --fixture genus2"), 0);
  EXPECT_EQ(cli("cone --fixture genus2 --decreasing"), 2);
  EXPECT_EQ(cli("validate --input \"" + lam.string() + "\""), 1);
  EXPECT_EQ(cli("validate --input \"" + broken.string() + "\""), 3);
  EXPECT_EQ(cli("validate --input /nonexistent/x.json"), 3);
  EXPECT_EQ(cli("explode --fixture genus2"), 3);
  EXPECT_EQ(cli("validate"), 3);
  EXPECT_EQ(cli("validate --fixture genus2 --input \"" + good.string() + "\""), 3);
  EXPECT_EQ(cli("validate --fixture genus3"), 3);
  EXPECT_EQ(cli("validate --fixture genus2 --format xml"), 3);
  EXPECT_EQ(cli("report --fixture genus2 --format json --out \"" + out.string() + "\""), 2);
  std::ifstream f(out);
  ASSERT_TRUE(f);
  OJson doc = OJson::parse(f);
  EXPECT_EQ(doc["exit_status"], 2);
  EXPECT_EQ(doc["command"], "report");
}

}  // namespace
