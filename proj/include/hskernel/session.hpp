#pragma once

// Session files: a ring, an optional ideal, named items and a command list.
//
//   {"ring": {"char": 2, "vars": ["x1","x2","x3"]},
//    "ideal": ["x1^2 + x2^3 + x3^2"],
//    "items": {"F": {"poly": "..."}, "delta": {"diffop": "..."},
//              "Phi4": {"hs": {"length": 4, "images": [["x1"], ["x2","0","x2^2"], ...]}},
//              "L": {"hs": {"lift": "Phi4"}}},
//    "commands": ["check-log Phi4"]}

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hskernel/graded_dual.hpp"
#include "hskernel/groebner.hpp"
#include "hskernel/hs.hpp"
#include "hskernel/parse.hpp"

namespace hsk {

using Json = nlohmann::ordered_json;

class SessionError : public std::invalid_argument {
 public:
  SessionError(const std::string& locus, const std::string& msg)
      : std::invalid_argument(locus.empty() ? msg : locus + ": " + msg) {}
};

/// The JSON-level description, before anything is parsed into a ring.
struct SessionSpec {
  std::uint64_t characteristic = 0;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
  Json items = Json::object();
  std::vector<std::string> commands;

  friend bool operator==(const SessionSpec&, const SessionSpec&) = default;
};

inline Json serialize(const SessionSpec& s) {
  Json j;
  j["ring"]["char"] = s.characteristic;
  j["ring"]["vars"] = s.vars;
  if (!s.ideal.empty()) j["ideal"] = s.ideal;
  j["items"] = s.items;
  j["commands"] = s.commands;
  return j;
}

namespace detail {

inline Json parse_json_strict(const std::string& text) {
  // Reject duplicate keys at any depth: names must be unique.
  std::vector<std::set<std::string>> keys;
  std::string dup;
  Json::parser_callback_t cb = [&](int, Json::parse_event_t ev, Json& parsed) {
    if (ev == Json::parse_event_t::object_start) keys.emplace_back();
    else if (ev == Json::parse_event_t::object_end) keys.pop_back();
    else if (ev == Json::parse_event_t::key && !keys.back().insert(parsed.get<std::string>()).second && dup.empty())
      dup = parsed.get<std::string>();
    return true;
  };
  Json j;
  try {
    j = Json::parse(text, cb);
  } catch (const Json::parse_error& e) {
    throw SessionError("session", e.what());
  }
  if (!dup.empty()) throw SessionError("session", "duplicate key \"" + dup + "\"");
  return j;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& locus) {
  if (!j.is_array()) throw SessionError(locus, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw SessionError(locus + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Shape checks only; see Session<F>::load for the mathematical validation.
inline SessionSpec parse_session_spec(const std::string& text) {
  const Json j = detail::parse_json_strict(text);
  if (!j.is_object()) throw SessionError("session", "expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "ring" && k != "ideal" && k != "items" && k != "commands")
      throw SessionError(k, "unknown top-level field");
  SessionSpec s;
  if (!j.contains("ring") || !j["ring"].is_object()) throw SessionError("ring", "missing ring object");
  const auto& r = j["ring"];
  if (!r.contains("char") || !r["char"].is_number_unsigned())
    throw SessionError("ring.char", "expected a non-negative integer characteristic");
  s.characteristic = r["char"].get<std::uint64_t>();
  if (!r.contains("vars")) throw SessionError("ring.vars", "missing variable list");
  s.vars = detail::string_list(r["vars"], "ring.vars");
  if (j.contains("ideal")) s.ideal = detail::string_list(j["ideal"], "ideal");
  if (j.contains("items")) {
    if (!j["items"].is_object()) throw SessionError("items", "expected an object");
    s.items = j["items"];
  }
  if (j.contains("commands")) s.commands = detail::string_list(j["commands"], "commands");
  return s;
}

template <CoefficientField F>
using ItemValue = std::variant<Poly<F>, DiffOp<F>, HSDerivation<F>, MultiDerivation<F>>;
template <CoefficientField F>
using ItemValue = std::variant<Poly<F>, DiffOp<F>, HSDerivation<F>, MultiDerivation<F>>;

template <CoefficientField F>
class Session {
 public:
  using P = Poly<F>;
  using Op = DiffOp<F>;
  using HS = HSDerivation<F>;
  using MD = MultiDerivation<F>;

  /// Parses every item and the ideal; errors carry the JSON locus.
  static Session load(const SessionSpec& spec, const F& field) {
    Session s;
    s.spec_ = spec;
    if (spec.vars.empty()) throw SessionError("ring.vars", "at least one variable is required");
    if (spec.vars.size() > kMaxVars)
      throw SessionError("ring.vars", std::to_string(spec.vars.size()) + " variables (max " + std::to_string(kMaxVars) + ")");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < spec.vars.size(); ++i) {
      const auto& v = spec.vars[i];
      const std::string locus = "ring.vars[" + std::to_string(i) + "]";
      if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') || v == "D")
        throw SessionError(locus, "invalid variable name \"" + v + "\"");
      for (char c : v)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw SessionError(locus, "invalid variable name \"" + v + "\"");
      if (!seen.insert(v).second) throw SessionError(locus, "duplicate variable \"" + v + "\"");
    }
    s.ring_ = Ring<F>(field, spec.vars.size());
    s.names_ = spec.vars;
    if (!spec.ideal.empty()) {
      std::vector<P> gens;
      for (std::size_t i = 0; i < spec.ideal.size(); ++i) gens.push_back(s.poly_at(spec.ideal[i], "ideal[" + std::to_string(i) + "]"));
      s.ideal_ = Ideal<F>(s.ring_, std::move(gens));
    }
    for (const auto& [name, _] : spec.items.items()) s.resolve(name, {});
    return s;
  }

  const SessionSpec& spec() const { return spec_; }
  const Ring<F>& ring() const { return ring_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::optional<Ideal<F>>& ideal() const { return ideal_; }
  const Ideal<F>& require_ideal() const {
    if (!ideal_) throw SessionError("ideal", "this command needs an ideal");
    return *ideal_;
  }
  bool has_item(const std::string& name) const { return items_.count(name) != 0; }
  const std::map<std::string, ItemValue<F>>& items() const { return items_; }

  /// A declared item, or else the argument read as an expression.
  ItemValue<F> value(const std::string& arg) const {
    if (auto it = items_.find(arg); it != items_.end()) return it->second;
    try {
      Op op = parse_diffop(ring_, names_, arg);
      if (op.has_order_at_most(0)) return op.coeff(MultiIndex(ring_.nvars));
      return op;
    } catch (const ParseError& e) {
      throw SessionError(arg, std::string("not a declared item, and not an expression (") + e.what() + ")");
    }
  }

  Op as_diffop(const std::string& arg) const {
    auto v = value(arg);
    if (auto* p = std::get_if<P>(&v)) return Op::multiplication(*p);
    if (auto* d = std::get_if<Op>(&v)) return *d;
    if (auto* m = std::get_if<MD>(&v); m && m->degree() == 1) return m->to_derivation();
    throw SessionError(arg, "expected a differential operator");
  }

  HS as_hs(const std::string& arg) const {
    auto v = value(arg);
    if (auto* h = std::get_if<HS>(&v)) return *h;
    if (auto* d = std::get_if<Op>(&v)) return HS::from_derivation(*d);
    throw SessionError(arg, "expected a Hasse-Schmidt derivation");
  }

  MD as_multider(const std::string& arg) const {
    auto v = value(arg);
    if (auto* m = std::get_if<MD>(&v)) return *m;
    if (auto* p = std::get_if<P>(&v)) return MD::from_poly(*p);
    if (auto* d = std::get_if<Op>(&v)) return MD::from_derivation(*d);
    throw SessionError(arg, "expected a multiderivation, polynomial or derivation");
  }

 private:
  P poly_at(const std::string& text, const std::string& locus) const {
    try {
      return parse_poly(ring_, names_, text);
    } catch (const ParseError& e) {
      throw SessionError(locus, e.what());
    }
  }
  Op diffop_at(const std::string& text, const std::string& locus) const {
    try {
      return parse_diffop(ring_, names_, text);
    } catch (const ParseError& e) {
      throw SessionError(locus, e.what());
    }
  }
  static const std::string& string_at(const Json& j, const std::string& locus) {
    if (!j.is_string()) throw SessionError(locus, "expected a string");
    return j.template get_ref<const std::string&>();
  }
  static int int_at(const Json& j, const std::string& locus) {
    if (!j.is_number_unsigned() || j.template get<std::uint64_t>() > static_cast<std::uint64_t>(kMaxOrder))
      throw SessionError(locus, "expected an integer in [0, " + std::to_string(kMaxOrder) + "]");
    return static_cast<int>(j.template get<std::uint64_t>());
  }

  const ItemValue<F>& resolve(const std::string& name, std::vector<std::string> stack) {
    if (auto it = items_.find(name); it != items_.end()) return it->second;
    const std::string locus = "items." + name;
    if (!spec_.items.contains(name)) throw SessionError(locus, "undeclared item");
    for (const auto& s : stack)
      if (s == name) throw SessionError(locus, "item refers to itself");
    stack.push_back(name);
    const Json& j = spec_.items[name];
    if (!j.is_object() || j.size() != 1)
      throw SessionError(locus, "expected exactly one of poly, diffop, hs, multider");
    const auto& [kind, body] = *j.items().begin();
    const std::string at = locus + "." + kind;
    ItemValue<F> v;
    if (kind == "poly") v = poly_at(string_at(body, at), at);
    else if (kind == "diffop") v = diffop_at(string_at(body, at), at);
    else if (kind == "hs") v = hs_at(body, at, stack);
    else if (kind == "multider") v = multider_at(body, at);
    else throw SessionError(locus, "unknown item kind \"" + kind + "\"");
    return items_.emplace(name, std::move(v)).first->second;
  }

  HS hs_ref(const Json& j, const std::string& locus, const std::vector<std::string>& stack) {
    const auto& name = string_at(j, locus);
    const auto& v = resolve(name, stack);
    if (auto* h = std::get_if<HS>(&v)) return *h;
    if (auto* d = std::get_if<Op>(&v)) return HS::from_derivation(*d);
    throw SessionError(locus, "\"" + name + "\" is not a Hasse-Schmidt derivation");
  }

  HS hs_at(const Json& j, const std::string& locus, const std::vector<std::string>& stack) {
    if (!j.is_object()) throw SessionError(locus, "expected an object");
    try {
      if (j.contains("images")) {
        const auto& im = j["images"];
        if (!im.is_array() || im.size() != ring_.nvars)
          throw SessionError(locus + ".images", "expected one list per variable (" + std::to_string(ring_.nvars) + ")");
        int m = 0;
        for (const auto& row : im) m = std::max(m, static_cast<int>(row.size()) - 1);
        if (j.contains("length")) {
          const int declared = int_at(j["length"], locus + ".length");
          if (declared < m) throw SessionError(locus + ".length", "shorter than the image lists");
          m = declared;
        }
        std::vector<TruncSeries<F>> series;
        for (std::size_t k = 0; k < ring_.nvars; ++k) {
          const std::string at = locus + ".images[" + std::to_string(k) + "]";
          std::vector<P> coeffs;
          for (std::size_t i = 0; i < im[k].size(); ++i) coeffs.push_back(poly_at(string_at(im[k][i], at), at + "[" + std::to_string(i) + "]"));
          if (coeffs.empty()) throw SessionError(at, "empty image");
          series.emplace_back(ring_, m, std::move(coeffs));
        }
        return HS(ring_, std::move(series));
      }
      if (j.contains("derivation")) return HS::from_derivation(diffop_at(string_at(j["derivation"], locus + ".derivation"), locus + ".derivation"));
      if (j.contains("integral")) {
        const auto d = diffop_at(string_at(j["integral"], locus + ".integral"), locus + ".integral");
        if (!j.contains("length")) throw SessionError(locus, "integral needs a length");
        return char0_integral(d, int_at(j["length"], locus + ".length"));
      }
      if (j.contains("lift")) return canonical_lift(hs_ref(j["lift"], locus + ".lift", stack));
      if (j.contains("inverse")) return hs_inverse(hs_ref(j["inverse"], locus + ".inverse", stack));
      if (j.contains("truncate")) {
        if (!j.contains("length")) throw SessionError(locus, "truncate needs a length");
        return hs_truncate(hs_ref(j["truncate"], locus + ".truncate", stack), int_at(j["length"], locus + ".length"));
      }
      if (j.contains("compose")) {
        const auto& c = j["compose"];
        if (!c.is_array() || c.size() < 2) throw SessionError(locus + ".compose", "expected a list of at least two names");
        HS acc = hs_ref(c[0], locus + ".compose[0]", stack);
        for (std::size_t i = 1; i < c.size(); ++i) acc = hs_compose(acc, hs_ref(c[i], locus + ".compose[" + std::to_string(i) + "]", stack));
        return acc;
      }
      if (j.contains("scale")) {
        const auto& c = j["scale"];
        if (!c.is_array() || c.size() != 2) throw SessionError(locus + ".scale", "expected [poly, name]");
        return hs_scale(poly_at(string_at(c[0], locus + ".scale[0]"), locus + ".scale[0]"), hs_ref(c[1], locus + ".scale[1]", stack));
      }
    } catch (const SessionError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw SessionError(locus, e.what());
    } catch (const NotIntegrable& e) {
      throw SessionError(locus, e.what());
    }
    throw SessionError(locus, "expected one of images, derivation, integral, lift, inverse, truncate, compose, scale");
  }

  MD multider_at(const Json& j, const std::string& locus) {
    if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_unsigned())
      throw SessionError(locus, "expected {\"degree\": r, \"values\": {...}}");
    const auto r = j["degree"].template get<std::uint64_t>();
    if (r > kMaxDividedPowerDegree) throw SessionError(locus + ".degree", "degree too large");
    MD u(ring_, static_cast<std::uint32_t>(r));
    if (!j.contains("values")) return u;
    if (!j["values"].is_object()) throw SessionError(locus + ".values", "expected an object");
    for (const auto& [key, val] : j["values"].items()) {
      const std::string at = locus + ".values." + key;
      Json idx;
      try {
        idx = Json::parse(key);
      } catch (const Json::parse_error&) {
        throw SessionError(at, "key must look like [a,b,...]");
      }
      if (!idx.is_array() || idx.size() != ring_.nvars) throw SessionError(at, "index needs " + std::to_string(ring_.nvars) + " entries");
      MultiIndex a(ring_.nvars);
      for (std::size_t k = 0; k < ring_.nvars; ++k) {
        if (!idx[k].is_number_unsigned()) throw SessionError(at, "index entries must be non-negative integers");
        a[k] = static_cast<std::uint32_t>(idx[k].template get<std::uint64_t>());
      }
      if (a.total() != r) throw SessionError(at, "index degree differs from " + std::to_string(r));
      u.set(a, poly_at(string_at(val, at), at));
    }
    return u;
  }

  SessionSpec spec_;
  Ring<F> ring_{};
  std::vector<std::string> names_;
  std::optional<Ideal<F>> ideal_;
  std::map<std::string, ItemValue<F>> items_;
};

}  // namespace hsk
