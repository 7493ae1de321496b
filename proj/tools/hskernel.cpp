// hskernel: run commands against a session file.
//
//   hskernel run <session.json> [command ...] [--seed N] [--cases N] [--target M]
//                [--degree n] [--power i] [--json out.json]
//   hskernel validate <session.json>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hskernel/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hsk::UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Overrides {
  std::optional<std::uint64_t> seed, cases, target, degree, power;

  void apply(hsk::CommandSpec& c) const {
    if (seed) c.seed = seed;
    if (cases) c.cases = cases;
    if (target) c.target = target;
    if (degree) c.degree = degree;
    if (power) c.power = power;
  }
};

int run(const std::string& path, const std::vector<std::string>& tokens, const Overrides& ov, const std::string& json_out) {
  hsk::SessionSpec spec;
  try {
    spec = hsk::parse_session_spec(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hsk::kUsage;
  }

  std::vector<hsk::CommandSpec> cmds;
  try {
    if (tokens.empty())
      for (const auto& line : spec.commands) cmds.push_back(hsk::parse_command(line));
    else
      cmds.push_back(hsk::parse_command(tokens));
  } catch (const hsk::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hsk::kUsage;
  }
  for (auto& c : cmds) ov.apply(c);

  int code = hsk::kOk;
  hsk::Json out;
  out["session"] = hsk::serialize(spec);
  out["results"] = hsk::Json::array();
  for (const auto& c : cmds) {
    const auto r = hsk::run_command(spec, c);
    if (cmds.size() > 1 || tokens.empty()) std::cout << "== " << c.text() << "\n";
    (r.exit_code == hsk::kUsage || r.exit_code == hsk::kDeskScale ? std::cerr : std::cout) << r.report;
    code = std::max(code, r.exit_code);
    out["results"].push_back({{"command", c.text()}, {"exit_code", r.exit_code}, {"report", r.report}, {"data", r.data}});
  }
  out["exit_code"] = code;
  if (!json_out.empty()) {
    std::ofstream f(json_out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << json_out << "\n";
      return hsk::kUsage;
    }
    f << out.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hasse-Schmidt derivations, differential operators and logarithmic integrability"};
  app.require_subcommand(1);

  std::string session, json_out;
  std::vector<std::string> tokens;
  Overrides ov;
  auto* run_cmd = app.add_subcommand("run", "run one command, or the session's command list");
  run_cmd->add_option("session", session, "session JSON file")->required();
  run_cmd->add_option("command", tokens, "command and its arguments");
  run_cmd->add_option("--seed", ov.seed, "seed for verify-theorems");
  run_cmd->add_option("--cases", ov.cases, "random cases per field for verify-theorems");
  run_cmd->add_option("--target", ov.target, "target length for step-integrate");
  run_cmd->add_option("--degree", ov.degree, "degree for theta");
  run_cmd->add_option("--power", ov.power, "power for divided-power");
  run_cmd->add_option("--json", json_out, "also write a JSON report");
  run_cmd->footer(hsk::command_usage());

  std::string vsession;
  auto* val_cmd = app.add_subcommand("validate", "parse a session and print it back in canonical form");
  val_cmd->add_option("session", vsession, "session JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hsk::kUsage;
  }

  if (*run_cmd) return run(session, tokens, ov, json_out);

  try {
    const auto spec = hsk::parse_session_spec(read_file(vsession));
    if (const auto err = hsk::validate_session(spec); !err.empty()) {
      std::cerr << "error: " << err << "\n";
      return hsk::kUsage;
    }
    std::cout << hsk::serialize(spec).dump(2) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hsk::kUsage;
  }
  return hsk::kOk;
}
