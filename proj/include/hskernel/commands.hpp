#pragma once

// Session commands. Each returns report text, a JSON payload and an exit code:
// 0 success, 1 mathematical negative, 2 usage error, 3 desk-scale cap.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hskernel/logarithmic.hpp"
#include "hskernel/session.hpp"
#include "hskernel/verify.hpp"

namespace hsk {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kDeskScale = 3 };

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

struct CommandSpec {
  std::string name;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed, cases, target, degree, power;

  std::string text() const {
    std::string s = name;
    for (const auto& a : args) s += " " + a;
    auto flag = [&](const char* n, const std::optional<std::uint64_t>& v) {
      if (v) s += std::string(" --") + n + " " + std::to_string(*v);
    };
    flag("seed", seed);
    flag("cases", cases);
    flag("target", target);
    flag("degree", degree);
    flag("power", power);
    return s;
  }
};

struct CommandResult {
  int exit_code = kOk;
  std::string report;
  Json data = Json::object();
};

inline constexpr std::uint64_t kDefaultSeed = 20240607;
inline constexpr std::uint64_t kDefaultCases = 100;

namespace detail {

struct CommandInfo {
  const char* name;
  std::size_t arity;
  const char* usage;
};

inline const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> t = {
      {"check-log", 1, "check-log <item>"},
      {"components", 1, "components <hs>"},
      {"compose", 2, "compose <hs> <hs>"},
      {"total-symbol", 1, "total-symbol <hs>"},
      {"theta", 1, "theta <op> [--degree n]"},
      {"shuffle", 2, "shuffle <u> <v>"},
      {"divided-power", 1, "divided-power <u> --power i"},
      {"obstruction", 1, "obstruction <hs>"},
      {"step-integrate", 1, "step-integrate <item> --target m"},
      {"fingerprint", 1, "fingerprint <derivation>"},
      {"verify-theorems", 0, "verify-theorems [--seed n] [--cases n]"},
  };
  return t;
}

inline std::uint64_t parse_count(const std::string& flag, const std::string& v) {
  if (v.empty() || v.size() > 18 || v.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(flag + " expects a non-negative integer, got \"" + v + "\"");
  return std::stoull(v);
}

}  // namespace detail

inline std::string command_usage() {
  std::string s = "commands:\n";
  for (const auto& c : detail::command_table()) s += "  " + std::string(c.usage) + "\n";
  return s;
}

inline CommandSpec parse_command(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw UsageError("empty command");
  CommandSpec c;
  c.name = tokens[0];
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.rfind("--", 0) != 0) {
      c.args.push_back(t);
      continue;
    }
    if (i + 1 >= tokens.size()) throw UsageError(t + " needs a value");
    const auto v = detail::parse_count(t, tokens[++i]);
    if (t == "--seed") c.seed = v;
    else if (t == "--cases") c.cases = v;
    else if (t == "--target") c.target = v;
    else if (t == "--degree") c.degree = v;
    else if (t == "--power") c.power = v;
    else throw UsageError("unknown option " + t);
  }
  const detail::CommandInfo* info = nullptr;
  for (const auto& e : detail::command_table())
    if (c.name == e.name) info = &e;
  if (!info) throw UsageError("unknown command \"" + c.name + "\"\n" + command_usage());
  if (c.args.size() != info->arity) throw UsageError(std::string("usage: ") + info->usage);
  return c;
}

inline CommandSpec parse_command(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return parse_command(tokens);
}

namespace detail {

template <CoefficientField F>
std::string render_images(const HSDerivation<F>& d, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t j = 0; j < names.size(); ++j) s += "  " + names[j] + " -> " + d.images()[j].to_string(names) + "\n";
  return s;
}

template <CoefficientField F>
std::string render_components(const HSDerivation<F>& d, const std::vector<std::string>& names, Json& data) {
  std::string s;
  data["components"] = Json::array();
  for (int i = 0; i <= d.length(); ++i) {
    const auto c = d.component(i).to_string(names);
    s += "  D_" + std::to_string(i) + " = " + c + "\n";
    data["components"].push_back(c);
  }
  return s;
}

inline std::string generator_label(std::size_t g) { return "g" + std::to_string(g + 1); }

template <CoefficientField F>
CommandResult check_log(const Session<F>& s, const std::string& arg) {
  CommandResult r;
  const auto& J = s.require_ideal();
  const auto& names = s.names();
  const auto v = s.value(arg);
  r.data["item"] = arg;
  if (const auto* op = std::get_if<DiffOp<F>>(&v)) {
    const auto w = log_derivation_witness(*op, J);
    r.data["logarithmic"] = !w;
    if (!w) {
      r.report = arg + " is J-logarithmic\n";
      return r;
    }
    r.exit_code = kNegative;
    r.data["normal_form"] = w->normal_form.to_string(names);
    r.report = arg + " is not J-logarithmic: " + arg + "(" + generator_label(w->generator) + ") has NF " +
               w->normal_form.to_string(names) + " modulo J\n";
    return r;
  }
  const auto d = s.as_hs(arg);
  const auto w = log_hs_witness(d, J);
  r.data["length"] = d.length();
  r.data["logarithmic"] = !w;
  if (!w) {
    r.report = arg + " (length " + std::to_string(d.length()) + ") is J-logarithmic\n";
    return r;
  }
  r.exit_code = kNegative;
  r.data["component"] = w->component;
  r.data["normal_form"] = w->normal_form.to_string(names);
  r.report = arg + " (length " + std::to_string(d.length()) + ") is not J-logarithmic: D_" +
             std::to_string(w->component) + "(" + generator_label(w->generator) + ") has NF " +
             w->normal_form.to_string(names) + " modulo J\n";
  // For principal J, say whether a derivation could repair the top component.
  if (auto f = J.principal_generator(); f && w->component == d.length() && d.length() >= 1 &&
                                        is_log_hs(hs_truncate(d, d.length() - 1), J)) {
    const auto top = d.phi(*f)[static_cast<std::size_t>(d.length())];
    const auto nf = obstruction_ideal(*f).reduce(top);
    r.data["obstruction_nf"] = nf.to_string(names);
    r.report += "obstruction NF of D_" + std::to_string(d.length()) + "(F) modulo (dF/dx_i, F): " + nf.to_string(names) +
                (nf.is_zero() ? " (a derivation correction exists)\n" : " (no derivation correction exists)\n");
  }
  return r;
}

template <CoefficientField F>
CommandResult run_typed(const Session<F>& s, const CommandSpec& c) {
  CommandResult r;
  const auto& names = s.names();
  const auto& n = c.name;
  if (n == "check-log") return check_log(s, c.args[0]);
  if (n == "components") {
    const auto d = s.as_hs(c.args[0]);
    r.report = c.args[0] + " (length " + std::to_string(d.length()) + ")\n" + render_components(d, names, r.data);
    return r;
  }
  if (n == "compose") {
    const auto d = hs_compose(s.as_hs(c.args[0]), s.as_hs(c.args[1]));
    r.report = c.args[0] + " o " + c.args[1] + " (length " + std::to_string(d.length()) + ")\n" +
               render_images(d, names) + render_components(d, names, r.data);
    return r;
  }
  if (n == "total-symbol") {
    const auto d = s.as_hs(c.args[0]);
    const auto ts = total_symbol(d);
    r.data["slots"] = Json::array();
    for (int i = 0; i <= ts.length(); ++i) {
      const auto str = ts[static_cast<std::size_t>(i)].to_string(names);
      r.report += "  " + str + "\n";
      r.data["slots"].push_back(str);
    }
    const bool exp = is_exponential_type(ts);
    r.data["exponential_type"] = exp;
    r.report += std::string("exponential type: ") + (exp ? "yes" : "no") + "\n";
    if (!exp) r.exit_code = kNegative;
    return r;
  }
  if (n == "theta") {
    const auto p = s.as_diffop(c.args[0]);
    const auto deg = c.degree ? static_cast<std::uint32_t>(*c.degree) : p.order().value_or(0);
    if (deg > kMaxDividedPowerDegree) throw DeskScaleExceeded("theta degree " + std::to_string(deg));
    const auto u = theta(p, deg);
    r.report = u.to_string(names) + "\n";
    r.data["theta"] = u.to_string(names);
    return r;
  }
  if (n == "shuffle") {
    const auto u = s.as_multider(c.args[0]) * s.as_multider(c.args[1]);
    r.report = u.to_string(names) + "\n";
    r.data["shuffle"] = u.to_string(names);
    return r;
  }
  if (n == "divided-power") {
    if (!c.power) throw UsageError("divided-power needs --power i");
    const auto u = divided_power(s.as_multider(c.args[0]), static_cast<std::uint32_t>(*c.power));
    r.report = u.to_string(names) + "\n";
    r.data["divided_power"] = u.to_string(names);
    return r;
  }
  if (n == "obstruction") {
    const auto rep = obstruction_step(s.as_hs(c.args[0]), s.require_ideal());
    r.report = rep.to_string(names) + "\n";
    r.data["step"] = rep.step;
    r.data["ok"] = rep.ok();
    r.data["obstruction_nf"] = rep.obstruction.to_string(names);
    if (rep.ok()) r.data["correction"] = rep.correction->to_string(names);
    else r.exit_code = kNegative;
    return r;
  }
  if (n == "step-integrate") {
    if (!c.target) throw UsageError("step-integrate needs --target m");
    const int target = static_cast<int>(std::min<std::uint64_t>(*c.target, kMaxOrder + 1));
    const auto v = s.value(c.args[0]);
    const auto tr = std::holds_alternative<DiffOp<F>>(v)
                        ? step_integrate(std::get<DiffOp<F>>(v), s.require_ideal(), target)
                        : step_integrate(s.as_hs(c.args[0]), s.require_ideal(), target);
    r.report = tr.to_string(names);
    r.data["complete"] = tr.complete;
    r.data["steps"] = Json::array();
    for (const auto& st : tr.steps) r.data["steps"].push_back(st.to_string(names));
    if (tr.complete) r.report += render_components(*tr.reached, names, r.data);
    else r.exit_code = kNegative;
    return r;
  }
  if (n == "fingerprint") {
    const auto fp = induced_on_quotient(s.as_diffop(c.args[0]), s.require_ideal());
    std::string str = "(";
    r.data["fingerprint"] = Json::array();
    for (std::size_t j = 0; j < fp.size(); ++j) {
      str += (j ? ", " : "") + fp[j].to_string(names);
      r.data["fingerprint"].push_back(fp[j].to_string(names));
    }
    r.report = str + ")\n";
    return r;
  }
  throw UsageError("unknown command \"" + n + "\"");
}

}  // namespace detail

/// Runs one command, mapping failures to exit codes.
inline CommandResult run_command(const SessionSpec& spec, const CommandSpec& c) {
  try {
    if (c.name == "verify-theorems") {
      const auto seed = c.seed.value_or(kDefaultSeed);
      const auto cases = c.cases.value_or(kDefaultCases);
      const auto rep = verify_theorems(seed, cases);
      CommandResult r;
      r.report = "seed " + std::to_string(seed) + ", " + std::to_string(cases) + " cases per field\n" + rep.table();
      r.data["seed"] = seed;
      r.data["cases"] = cases;
      r.data["properties"] = Json::array();
      for (const auto& p : rep.results)
        r.data["properties"].push_back({{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}});
      r.exit_code = rep.ok() ? kOk : kNegative;
      return r;
    }
    if (spec.characteristic == 0) return detail::run_typed(Session<RationalField>::load(spec, RationalField()), c);
    return detail::run_typed(Session<PrimeField>::load(spec, PrimeField(spec.characteristic)), c);
  } catch (const DeskScaleExceeded& e) {
    return {kDeskScale, std::string("error: ") + e.what() + "\n", Json{{"error", e.what()}}};
  } catch (const NotIntegrable& e) {
    return {kNegative, std::string(e.what()) + "\n", Json{{"negative", e.what()}}};
  } catch (const std::invalid_argument& e) {
    return {kUsage, std::string("error: ") + e.what() + "\n", Json{{"error", e.what()}}};
  } catch (const Unsupported& e) {
    return {kUsage, std::string("error: ") + e.what() + "\n", Json{{"error", e.what()}}};
  } catch (const std::out_of_range& e) {
    return {kUsage, std::string("error: ") + e.what() + "\n", Json{{"error", e.what()}}};
  }
}

namespace detail {

template <CoefficientField F>
void validate_typed(const SessionSpec& spec, const F& field) {
  const auto s = Session<F>::load(spec, field);
  for (std::size_t i = 0; i < spec.commands.size(); ++i) {
    const std::string locus = "commands[" + std::to_string(i) + "]";
    CommandSpec c;
    try {
      c = parse_command(spec.commands[i]);
    } catch (const UsageError& e) {
      throw SessionError(locus, e.what());
    }
    for (const auto& a : c.args) {
      try {
        s.value(a);
      } catch (const SessionError& e) {
        throw SessionError(locus, e.what());
      }
    }
  }
}

}  // namespace detail

/// Parses every item and command argument; returns an error message or "".
inline std::string validate_session(const SessionSpec& spec) {
  try {
    if (spec.characteristic == 0) detail::validate_typed(spec, RationalField());
    else detail::validate_typed(spec, PrimeField(spec.characteristic));
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace hsk
