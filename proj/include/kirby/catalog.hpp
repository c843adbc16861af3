#pragma once

// Builders for the cork, plug and enlarged families, their twists, and the
// verification bundles that check the stated invariants on them.
//
// Linking data is reconstructed: the smallest choices that reproduce every
// stated invariant. Every build is flagged `reconstructed`.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kirby/adjunction.hpp"
#include "kirby/algebra.hpp"
#include "kirby/errors.hpp"
#include "kirby/grid.hpp"
#include "kirby/handlebody.hpp"
#include "kirby/moves.hpp"
#include "kirby/stein.hpp"

namespace kirby {

enum class Family { W, W_plug, C1, C2, P1, P2, cusp };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::W: return "W";
    case Family::W_plug: return "W_plug";
    case Family::C1: return "C1";
    case Family::C2: return "C2";
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::cusp: return "cusp";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::W, Family::W_plug, Family::C1, Family::C2, Family::P1, Family::P2, Family::cusp})
    if (s == to_string(f)) return f;
  throw InputError("unknown family '" + s + "' (expected W, W_plug, C1, C2, P1, P2 or cusp)");
}

struct FamilyParams {
  Family family = Family::C1;
  long m = 0, n = 1, p = 3, q = 0;

  std::string name() const {
    const std::string f = to_string(family);
    auto s = [](long v) { return std::to_string(v); };
    switch (family) {
      case Family::W: return f + "(" + s(n) + ")";
      case Family::W_plug:
      case Family::P1:
      case Family::P2: return f + "(" + s(m) + "," + s(n) + ")";
      case Family::C1:
      case Family::C2: return f + "(" + s(m) + "," + s(n) + "," + s(p) + "," + s(q) + ")";
      case Family::cusp: return f;
    }
    return f;
  }
};

// Smallest (k, k-1) torus knot at maximal tb that admits a Stein handle of the
// given framing, i.e. tb = k^2 - 3k + 1 >= framing + 1. The unknot covers framing <= -2.
inline GridDiagram stein_witness_grid(const Integer& framing, long* genus = nullptr) {
  if (framing <= -2) {
    if (genus) *genus = 0;
    return unknot_grid();
  }
  for (long k = 3;; ++k) {
    if (Integer(k * k - 3 * k + 1) >= framing + 1) {
      if (genus) *genus = (k - 1) * (k - 2) / 2;
      return torus_knot_grid(static_cast<int>(k), static_cast<int>(k - 1));
    }
    if (k > 64) throw InputError("framing " + framing.str() + " is too large for a witness grid");
  }
}

namespace detail {

inline Component witnessed(Component c, const Integer& framing_to_support) {
  c.attaching_grid = stein_witness_grid(framing_to_support);
  return c;
}

inline void require_twist_pair(const HandleDecomposition& h, const std::string& d, const std::string& p,
                               bool symmetric) {
  const Component& cd = h.component(d);
  const Component& cp = h.component(p);
  if (!cd.is_dotted()) throw InputError("'" + d + "' is not a dotted circle");
  if (cp.is_dotted() || *cp.framing != 0) throw InputError("'" + p + "' is not a 0-framed 2-handle");
  if (symmetric) {
    const Integer l = h.lk(d, p);
    if (l != 1 && l != -1) throw InputError("cork pair must link +-1, got " + l.str());
    for (const Component& o : h.components)
      if (o.id != d && o.id != p && h.lk(d, o.id) != h.lk(p, o.id))
        throw InputError("cork pair does not link '" + o.id + "' symmetrically");
  }
}

inline HandleDecomposition build_w(long n) {
  if (n < 1) throw InputError("W(n) needs n >= 1");
  HandleDecomposition h;
  h.add_component(witnessed(Component::dotted("d"), 0));
  h.add_component(witnessed(Component::framed("h", 0), 0));
  h.set_lk("d", "h", 1);
  h.metadata.cork = {"d", "h"};
  h.metadata.asserted_simply_connected = true;
  return h;
}

inline HandleDecomposition build_w_plug(long m, long n) {
  if (m < 1 || n < 1) throw InputError("plug families need m, n >= 1");
  HandleDecomposition h;
  Component d = witnessed(Component::dotted("d"), 0);
  d.seifert_genus = 1;  // once 0-framed, d bounds a torus in the twisted side
  h.add_component(std::move(d));
  h.add_component(witnessed(Component::framed("h", 0), 0));
  h.add_component(witnessed(Component::framed("a", n), n));
  h.set_lk("a", "d", 1);
  h.metadata.plug = {"d", "h"};
  h.metadata.asserted_simply_connected = true;
  return h;
}

inline HandleDecomposition build_c1(long m, long n, long p, long q) {
  if (p < 1) throw InputError("C-family needs p >= 1");
  if (q < 0) throw InputError("C-family needs q >= 0");
  HandleDecomposition h = build_w(n);
  Component t = Component::framed("t", m);
  t.attaching_grid = p == 1 ? unknot_grid() : torus_knot_grid(static_cast<int>(p), static_cast<int>(p - 1));
  t.seifert_genus = (p - 1) * (p - 2) / 2;
  h.add_component(std::move(t));
  for (long i = 1; i <= q; ++i) {
    Component e = Component::framed("x" + std::to_string(i), -2);
    e.attaching_grid = unknot_grid();
    e.seifert_genus = 0;
    h.add_component(std::move(e));
  }
  return h;
}

inline HandleDecomposition build_p1(long m, long n) {
  HandleDecomposition h = build_w_plug(m, n);
  h.add_component(witnessed(Component::framed("b", m), m));
  h.set_lk("b", "h", 1);
  return h;
}

// Cusp neighborhood: a dotted circle, its -1-framed meridian, and a 0-framed
// unknot running twice through the dotted circle.
inline HandleDecomposition build_cusp() {
  HandleDecomposition h;
  h.add_component(Component::dotted("d"));
  h.add_component(Component::framed("u", 0));
  h.add_component(Component::framed("e", -1));
  h.set_lk("d", "u", 2);
  h.set_lk("d", "e", 1);
  h.set_lk("u", "e", -1);
  h.metadata.asserted_simply_connected = true;
  return h;
}

}  // namespace detail

// Exchanges dot and 0-framing on the designated cork pair.
inline HandleDecomposition cork_twist(HandleDecomposition h) {
  require_valid(h);
  if (!h.metadata.cork) throw InputError("no designated cork sublink");
  const auto [d, p] = *h.metadata.cork;
  detail::require_twist_pair(h, d, p, true);
  h = twist(std::move(h), d, p);
  h.metadata.cork = {p, d};
  return h;
}

// Plug twist: the dotted circle becomes 0-framed, then its partner is dotted.
inline HandleDecomposition plug_twist(HandleDecomposition h) {
  require_valid(h);
  if (!h.metadata.plug) throw InputError("no designated plug pair");
  const auto [d, p] = *h.metadata.plug;
  detail::require_twist_pair(h, d, p, false);
  h = dot_zero_swap(std::move(h), d);
  h = dot_zero_swap(std::move(h), p);
  h.metadata.plug = {p, d};
  return h;
}

inline HandleDecomposition build(const FamilyParams& fp) {
  HandleDecomposition h;
  switch (fp.family) {
    case Family::W: h = detail::build_w(fp.n); break;
    case Family::W_plug: h = detail::build_w_plug(fp.m, fp.n); break;
    case Family::C1: h = detail::build_c1(fp.m, fp.n, fp.p, fp.q); break;
    case Family::C2: h = cork_twist(detail::build_c1(fp.m, fp.n, fp.p, fp.q)); break;
    case Family::P1: h = detail::build_p1(fp.m, fp.n); break;
    case Family::P2: h = plug_twist(detail::build_p1(fp.m, fp.n)); break;
    case Family::cusp: h = detail::build_cusp(); break;
  }
  h.metadata.name = fp.name();
  h.metadata.reconstructed = true;
  h.metadata.asserted_simply_connected = true;
  require_valid(h);
  return h;
}

// Move-script demos.
inline MoveScript cusp_demo_script() {
  return {{MoveStep::add_pair("z"), MoveStep::slide("z", "u", 1), MoveStep::slide("z", "u", -1),
           MoveStep::blow_up(-1, "f"), MoveStep::blow_down("f"), MoveStep::cancel("d", "e"),
           MoveStep::drop_pair("z")}};
}

inline MoveScript cork_twist_script() { return {{MoveStep::twist("d", "h")}}; }

// E(n) is carried only as an invariant summary.
struct EllipticSummary {
  long n = 1;
  long euler = 0;
  long signature = 0;
  long b2 = 0;
  std::vector<AmbientClass> basic_classes;
};

inline EllipticSummary elliptic_summary(long n) {
  if (n < 1) throw InputError("E(n) needs n >= 1");
  EllipticSummary s{n, 12 * n, -8 * n, 12 * n - 2, {}};
  if (n >= 2) s.basic_classes = en_basic_classes(n);
  return s;
}

// ---------------------------------------------------------------------------
// Verification bundles

struct Claim {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Checklist {
  std::string bundle;
  std::vector<Claim> claims;
  std::string verdict;

  bool all_passed() const {
    for (const auto& c : claims)
      if (!c.passed) return false;
    return true;
  }
};

inline Checklist verify_c_family(long m, long n, long p, long q) {
  Checklist out;
  out.bundle = "c-family " + FamilyParams{Family::C1, m, n, p, q}.name();
  const HandleDecomposition c1 = build({Family::C1, m, n, p, q});
  const HandleDecomposition c2 = build({Family::C2, m, n, p, q});
  const InvariantReport r1 = invariant_report(c1);
  const InvariantReport r2 = invariant_report(c2);
  const InvariantReport twisted = invariant_report(cork_twist(c1));
  {
    const bool ok = r1 == r2 && r1 == twisted;
    out.claims.push_back({"homeomorphic: reports agree across the cork twist", ok,
                          ok ? "euler, H_1, H_2, form and boundary H_1 identical" : "reports differ"});
  }
  {
    const SteinReport s1 = stein_check(c1), s2 = stein_check(c2);
    std::string detail;
    for (const auto* s : {&s1, &s2})
      for (const auto& v : s->handles)
        if (v.verdict != SteinVerdict::pass)
          detail += (detail.empty() ? "" : "; ") + v.id + " framing " + v.framing.str() + " tb " +
                    (v.tb ? std::to_string(*v.tb) : std::string("?")) + " " + to_string(v.verdict);
    out.claims.push_back({"Stein: every 2-handle has framing <= tb - 1 on both sides",
                          s1.overall && s2.overall, detail.empty() ? "all handles pass" : detail});
  }
  if (q == 0) {
    const AbelianGroup want = AbelianGroup::cyclic(m);
    out.claims.push_back({"boundary H_1 is Z/m", r1.boundary_h1 == want,
                          "got " + r1.boundary_h1.to_string() + ", want " + want.to_string()});
  } else {
    out.claims.push_back({"boundary H_1 is Z/m", true, "stated only for q = 0; got " + r1.boundary_h1.to_string()});
  }
  out.claims.push_back({"H_2 has rank q + 1", r1.h2_rank == static_cast<std::size_t>(q + 1) && r1.h1.is_trivial(),
                        "rank " + std::to_string(r1.h2_rank) + ", H_1 " + r1.h1.to_string()});
  out.verdict = out.all_passed() ? "PASS" : "FAIL";
  return out;
}

inline Checklist verify_parity(long m, long n) {
  if (m < 1 || m % 2 == 0) throw InputError("parity bundle needs m >= 1 odd, got " + std::to_string(m));
  if (n < 1 || n % 2 != 0) throw InputError("parity bundle needs n >= 1 even, got " + std::to_string(n));
  Checklist out;
  out.bundle = "parity P1(" + std::to_string(m) + "," + std::to_string(n) + ") vs P2";
  const InvariantReport r1 = invariant_report(build({Family::P1, m, n, 0, 0}));
  const InvariantReport r2 = invariant_report(build({Family::P2, m, n, 0, 0}));
  const Parity p1 = r1.form_invariants->parity, p2 = r2.form_invariants->parity;
  out.claims.push_back({"P1 form is odd", p1 == Parity::odd, to_string(p1)});
  out.claims.push_back({"P2 form is even", p2 == Parity::even, to_string(p2)});
  out.claims.push_back({"boundary H_1 agree", r1.boundary_h1 == r2.boundary_h1,
                        r1.boundary_h1.to_string() + " vs " + r2.boundary_h1.to_string()});
  out.claims.push_back({"H_1 and H_2 agree", r1.h1 == r2.h1 && r1.h2_rank == r2.h2_rank,
                        "H_1 " + r1.h1.to_string() + ", rank H_2 " + std::to_string(r1.h2_rank)});
  out.verdict = out.all_passed() ? "NOT-HOMEOMORPHIC" : "INCONCLUSIVE";
  return out;
}

struct TorusObstruction {
  std::string model;
  std::optional<TorusSearch> search;          // run when ambient pairing data is known
  std::optional<GenusOneWitness> witness;
  bool obstructed = false;                    // no nonzero square-zero class survives
};

inline TorusObstruction torus_class_obstruction(const std::string& model, long bound = 10) {
  TorusObstruction out;
  out.model = model;
  if (model == "P1(1,3)") {
    const HandleDecomposition h = build({Family::P1, 1, 3, 0, 0});
    const SymmetricForm q = restricted_form(h).form;
    // H_2 sits in E(2) # 2 CP^2-bar with x_i . E_j = delta_ij.
    const AmbientModel ambient = AmbientModel::blown_up_elliptic(2, 2);
    out.search = square_zero_torus_search(q, IntegerMatrix::identity(2), ambient, bound);
    out.obstructed = out.search->torus_compatible.empty();
  } else if (model == "P2(1,3)") {
    // The former dotted circle, now 0-framed, is the catalog witness.
    const GenusOneWitness w = genus_one_witness(build({Family::P2, 1, 3, 0, 0}), "d");
    if (w.square == 0 && w.genus <= 1) out.witness = w;
  } else {
    throw InputError("torus obstruction is defined for P1(1,3) and P2(1,3), not '" + model + "'");
  }
  return out;
}

inline Checklist verify_plug_pair(long bound = 10, int search_bound = 3) {
  Checklist out;
  out.bundle = "plug pair P1(1,3) vs P2(1,3)";
  const SymmetricForm std_form = SymmetricForm::diagonal({1, -1});
  const SymmetricForm q1 = restricted_form(build({Family::P1, 1, 3, 0, 0})).form;
  const SymmetricForm q2 = restricted_form(build({Family::P2, 1, 3, 0, 0})).form;
  const auto e1 = forms_equivalent(q1, std_form, search_bound);
  const auto e2 = forms_equivalent(q2, std_form, search_bound);
  out.claims.push_back({"P1 form is <1> + <-1>", e1.verdict == Equivalence::equivalent,
                        q1.matrix().to_string() + " " + to_string(e1.verdict)});
  out.claims.push_back({"P2 form is <1> + <-1>", e2.verdict == Equivalence::equivalent,
                        q2.matrix().to_string() + " " + to_string(e2.verdict)});
  const TorusObstruction t1 = torus_class_obstruction("P1(1,3)", bound);
  const TorusObstruction t2 = torus_class_obstruction("P2(1,3)", bound);
  out.claims.push_back({"P1 has no square-zero torus class", t1.obstructed,
                        std::to_string(t1.search->square_zero_classes) + " square-zero classes with |a|,|b| <= " +
                            std::to_string(bound) + ", " + std::to_string(t1.search->torus_compatible.size()) +
                            " pass the torus case"});
  out.claims.push_back({"P2 has a square-zero torus class", t2.witness.has_value(),
                        t2.witness ? "handle " + t2.witness->component + ", genus " +
                                         std::to_string(t2.witness->genus)
                                   : std::string("none found")});
  out.verdict = out.all_passed() ? "HOMEOMORPHIC-NOT-DIFFEOMORPHIC" : "INCONCLUSIVE";
  return out;
}

inline Checklist verify_genus_gap(long r, long p) {
  Checklist out;
  const long m = static_cast<long>(stein_ceiling(p));
  const long n = 3 * r - 2;
  out.bundle = "genus gap C1(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(p) + ",0)";
  const ExoticnessCertificate c = exoticness_certificate(m, n, p, 0);
  out.claims.push_back({"certificate reports DISTINCT", c.distinct,
                        c.applies() ? "bound " + c.bound.bound.str() + " vs realized " + c.realized_genus.str() : c.reason});
  out.claims.push_back({"gap >= r", c.applies() && c.gap >= r, "gap " + c.gap.str() + ", r " + std::to_string(r)});
  const Integer g = genus_gap(m, p, r);
  out.claims.push_back({"genus_gap equals r", g == r, g.str()});
  out.verdict = out.all_passed() ? "DISTINCT" : "INCONCLUSIVE";
  return out;
}

}  // namespace kirby
