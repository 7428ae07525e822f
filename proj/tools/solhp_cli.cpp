// solhp: command-line front end.
//   solhp <validate|analyze|deform|holonomy|cone|report> (--input FILE | --fixture genus2) [flags]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "solhp/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact deformation, holonomy and cone-angle reports for pseudo-Anosov mapping tori"};
  std::string command, input, fixture, z_scale = "1", format = "text", out;
  std::vector<std::string> sets;
  bool decreasing = false;

  app.add_option("command", command, "validate | analyze | deform | holonomy | cone | report")->required();
  auto* in_opt = app.add_option("--input", input, "input JSON document");
  auto* fx_opt = app.add_option("--fixture", fixture, "bundled input (genus2)");
  in_opt->excludes(fx_opt);
  app.add_option("--set", sets, "free parameter NAME=value (repeatable)");
  app.add_option("--z-scale", z_scale, "scale of the z-part (default 1)");
  app.add_flag("--decreasing", decreasing, "choose free values so every cone angle decreases");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return solhp::kUsage;
  }

  auto usage = [](const std::string& msg) {
    std::cerr << "cli: usage: " << msg << "\n";
    return solhp::kUsage;
  };
  auto cmd = solhp::parse_command(command);
  if (!cmd) return usage("unknown command \"" + command + "\"");
  if (input.empty() == fixture.empty()) return usage("exactly one of --input or --fixture is required");

  solhp::RunOptions opt;
  opt.command = *cmd;
  opt.z_scale = z_scale;
  opt.decreasing = decreasing;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) return usage("--set expects NAME=value, got \"" + s + "\"");
    opt.sets.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!fixture.empty()) {
    if (!solhp::has_fixture(fixture)) return usage("unknown fixture \"" + fixture + "\"");
    opt.input_text = std::string(solhp::kGenus2Json);
    opt.source = "fixture:" + fixture;
  } else {
    std::ifstream f(input);
    if (!f) return usage("cannot read " + input);
    std::ostringstream ss;
    ss << f.rdbuf();
    opt.input_text = ss.str();
    opt.source = input;
  }

  auto [report, code] = solhp::run_pipeline(opt);
  std::string text = solhp::serialize_report(report, format == "json");
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(out, std::ios::binary);
    if (!o) return usage("cannot write " + out);
    o << text;
  }
  if (report.contains("error")) std::cerr << report["error"]["message"].get<std::string>() << "\n";
  return code;
}
