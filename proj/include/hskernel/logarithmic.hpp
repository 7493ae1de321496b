#pragma once

// J-logarithmic derivations and HS derivations, and stepwise integration for
// principal J = (F).

#include <optional>
#include <string>
#include <vector>

#include "hskernel/groebner.hpp"
#include "hskernel/hs.hpp"

namespace hsk {

/// A generator g and component index i with D_i(g) outside J.
template <CoefficientField F>
struct LogWitness {
  int component = 0;
  std::size_t generator = 0;
  Poly<F> normal_form;
};

template <CoefficientField F>
std::optional<LogWitness<F>> log_derivation_witness(const DiffOp<F>& delta, const Ideal<F>& J) {
  HSDerivation<F>::check_derivation(delta);
  for (std::size_t g = 0; g < J.generators().size(); ++g) {
    const auto v = delta(J.generators()[g]);
    if (!J.member(v)) return LogWitness<F>{1, g, J.reduce(v)};
  }
  return std::nullopt;
}

template <CoefficientField F>
bool is_log_derivation(const DiffOp<F>& delta, const Ideal<F>& J) {
  return !log_derivation_witness(delta, J).has_value();
}

/// First failing coefficient of Phi(g) over the generators g of J.
template <CoefficientField F>
std::optional<LogWitness<F>> log_hs_witness(const HSDerivation<F>& d, const Ideal<F>& J) {
  for (std::size_t g = 0; g < J.generators().size(); ++g) {
    const auto s = d.phi(J.generators()[g]);
    for (int i = 1; i <= d.length(); ++i) {
      const auto& v = s[static_cast<std::size_t>(i)];
      if (!J.member(v)) return LogWitness<F>{i, g, J.reduce(v)};
    }
  }
  return std::nullopt;
}

/// Phi(J) inside J R_m, checked on generators.
template <CoefficientField F>
bool is_log_hs(const HSDerivation<F>& d, const Ideal<F>& J) {
  return !log_hs_witness(d, J).has_value();
}

/// D_i(J) inside J for every i, through the Taylor-basis components.
template <CoefficientField F>
bool is_log_hs_components(const HSDerivation<F>& d, const Ideal<F>& J) {
  for (int i = 1; i <= d.length(); ++i)
    for (const auto& g : J.generators())
      if (!J.member(op_apply(d.component(i), g))) return false;
  return true;
}

/// (NF(delta(x_j)))_j: equal exactly when two J-logarithmic derivations induce
/// the same derivation of R/J.
template <CoefficientField F>
std::vector<Poly<F>> induced_on_quotient(const DiffOp<F>& delta, const Ideal<F>& J) {
  if (!is_log_derivation(delta, J)) throw std::invalid_argument("derivation is not J-logarithmic");
  std::vector<Poly<F>> out;
  for (std::size_t j = 0; j < delta.ring().nvars; ++j) out.push_back(J.reduce(delta(Poly<F>::variable(delta.ring(), j))));
  return out;
}

template <CoefficientField F>
struct ObstructionReport {
  int step = 0;                             // the length m+1 being reached
  Poly<F> obstruction;                      // NF of D_{m+1}(F) mod (F'_x1, ..., F'_xn, F)
  std::optional<DiffOp<F>> correction;      // present iff obstruction is zero
  std::optional<HSDerivation<F>> corrected; // the J-logarithmic length m+1 lift

  bool ok() const { return correction.has_value(); }

  std::string to_string(const std::vector<std::string>& names) const {
    std::string s = "step " + std::to_string(step) + ": ";
    if (ok()) return s + "OK (correction: " + correction->to_string(names) + ")";
    return s + "BLOCKED (obstruction NF: " + obstruction.to_string(names) + ")";
  }
};

template <CoefficientField F>
Poly<F> principal_generator_or_throw(const Ideal<F>& J) {
  auto g = J.principal_generator();
  if (!g) throw Unsupported("obstruction theory is implemented for principal ideals only");
  return *g;
}

/// (F'_x1, ..., F'_xn, F).
template <CoefficientField F>
Ideal<F> obstruction_ideal(const Poly<F>& f) {
  std::vector<Poly<F>> gens;
  for (std::size_t i = 0; i < f.ring().nvars; ++i) gens.push_back(partial(f, i));
  gens.push_back(f);
  return Ideal<F>(f.ring(), std::move(gens));
}

/// Lift D canonically to length m+1 and try to repair D_{m+1} by a derivation.
template <CoefficientField F>
ObstructionReport<F> obstruction_step(const HSDerivation<F>& d, const Ideal<F>& J) {
  using P = Poly<F>;
  const auto f = principal_generator_or_throw(J);
  if (!is_log_hs(d, J)) throw std::invalid_argument("obstruction_step: input is not J-logarithmic");
  const auto& ring = d.ring();
  const auto lift = canonical_lift(d);
  const int top = lift.length();
  const P v = lift.phi(f)[static_cast<std::size_t>(top)];
  const auto oi = obstruction_ideal(f);
  const auto dv = oi.divide_by_generators(v);

  ObstructionReport<F> rep;
  rep.step = top;
  rep.obstruction = dv.remainder;
  if (!dv.remainder.is_zero()) return rep;

  DiffOp<F> corr(ring);
  std::vector<TruncSeries<F>> im = lift.images();
  for (std::size_t k = 0; k < ring.nvars; ++k) {
    const P c = -dv.quotients[k];
    corr.add_term(MultiIndex::unit(ring.nvars, k), c);
    im[k][static_cast<std::size_t>(top)] += c;
  }
  HSDerivation<F> fixed(ring, std::move(im));
  if (!is_log_hs(fixed, J)) throw std::logic_error("obstruction_step: corrected lift is not J-logarithmic");
  rep.correction = std::move(corr);
  rep.corrected = std::move(fixed);
  return rep;
}

template <CoefficientField F>
struct StepTrace {
  std::vector<ObstructionReport<F>> steps;
  std::optional<HSDerivation<F>> reached;  // the longest J-logarithmic derivation found
  bool complete = false;

  std::string to_string(const std::vector<std::string>& names) const {
    std::string s;
    for (const auto& r : steps) s += r.to_string(names) + "\n";
    if (complete) s += "reached length " + std::to_string(reached->length()) + "\n";
    else s += "greedy path blocked at step " + std::to_string(steps.back().step) +
              " (inconclusive: greedy stepping can fail on integrable input)\n";
    return s;
  }
};

/// Greedy lifting of a J-logarithmic D up to length target.
template <CoefficientField F>
StepTrace<F> step_integrate(const HSDerivation<F>& d, const Ideal<F>& J, int target) {
  principal_generator_or_throw(J);
  if (target > kMaxOrder) throw DeskScaleExceeded("target length " + std::to_string(target));
  StepTrace<F> tr;
  HSDerivation<F> cur = d;
  tr.reached = cur;
  while (cur.length() < target) {
    auto rep = obstruction_step(cur, J);
    const bool ok = rep.ok();
    if (ok) cur = *rep.corrected;
    tr.steps.push_back(std::move(rep));
    if (!ok) return tr;
    tr.reached = cur;
  }
  tr.complete = true;
  return tr;
}

/// From a derivation: step 1 is the J-logarithmic check of delta itself.
template <CoefficientField F>
StepTrace<F> step_integrate(const DiffOp<F>& delta, const Ideal<F>& J, int target) {
  principal_generator_or_throw(J);
  ObstructionReport<F> first;
  first.step = 1;
  first.obstruction = Poly<F>(delta.ring());
  if (auto w = log_derivation_witness(delta, J)) {
    first.obstruction = w->normal_form;
    StepTrace<F> tr;
    tr.steps.push_back(std::move(first));
    return tr;
  }
  const auto d = HSDerivation<F>::from_derivation(delta);
  first.correction = DiffOp<F>(delta.ring());
  first.corrected = d;
  auto tr = step_integrate(d, J, target);
  tr.steps.insert(tr.steps.begin(), std::move(first));
  return tr;
}

/// a . D^(i) truncated to length m: x_i -> x_i + a t.
template <CoefficientField F>
HSDerivation<F> scaled_taylor(const Poly<F>& a, std::size_t i, int m) {
  return hs_scale(a, HSDerivation<F>::taylor(a.ring(), i, m));
}

/// Given a J-logarithmic m-integral d and a J-logarithmic delta inducing the
/// same derivation on R/J, returns d o E' with
/// E' = (a_1 . D^(1)) o ... o (a_n . D^(n)), a_i = (delta - D_1)(x_i) in J.
template <CoefficientField F>
HSDerivation<F> transfer_integral(const HSDerivation<F>& d, const DiffOp<F>& delta, const Ideal<F>& J) {
  const auto& ring = d.ring();
  const int m = d.length();
  HSDerivation<F> e = HSDerivation<F>::identity(ring, m);
  const DiffOp<F> diff = delta - d.component(1);
  for (std::size_t i = 0; i < ring.nvars; ++i) {
    const auto a = diff(Poly<F>::variable(ring, i));
    if (!J.member(a))
      throw std::invalid_argument("transfer_integral: derivations induce different maps on R/J");
    e = hs_compose(e, scaled_taylor(a, i, m));
  }
  return hs_compose(d, e);
}

}  // namespace hsk
