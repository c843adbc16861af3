#pragma once

// Text and structured (JSON) renderings of every report type. Key order is
// fixed, so identical inputs give byte-identical output.

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "kirby/adjunction.hpp"
#include "kirby/catalog.hpp"
#include "kirby/compare.hpp"
#include "kirby/handlebody.hpp"
#include "kirby/moves.hpp"
#include "kirby/stein.hpp"

namespace kirby {

using Json = nlohmann::ordered_json;

namespace detail {

// Integers that fit in 64 bits become numbers, larger ones decimal strings.
inline Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(v));
  return Json(v.str());
}

inline Json matrix_json(const IntegerMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json group_json(const AbelianGroup& g) {
  Json f = Json::array();
  for (const auto& d : g.invariant_factors) f.push_back(integer_json(d));
  return Json{{"text", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", f}};
}

inline Json form_invariants_json(const FormInvariants& f) {
  return Json{{"rank", f.rank},
              {"signature", f.signature},
              {"parity", to_string(f.parity)},
              {"det_abs", integer_json(f.det_abs)}};
}

inline std::string form_invariants_text(const FormInvariants& f) {
  std::ostringstream os;
  os << "rank " << f.rank << ", signature " << f.signature << ", " << to_string(f.parity) << ", |det| "
     << f.det_abs;
  return os.str();
}

inline Json bound_json(const GenusBound& b) {
  return Json{{"class", b.class_description}, {"bound", integer_json(b.bound)}, {"branch", to_string(b.branch)}};
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Json structured(const InvariantReport& r) {
  Json j;
  j["euler_characteristic"] = r.euler_characteristic;
  j["h1"] = detail::group_json(r.h1);
  j["h2_rank"] = r.h2_rank;
  j["boundary_h1"] = detail::group_json(r.boundary_h1);
  if (r.intersection_form) {
    j["intersection_form"] = detail::matrix_json(r.intersection_form->matrix());
    j["form_invariants"] = detail::form_invariants_json(*r.form_invariants);
  } else {
    j["intersection_form"] = nullptr;
    j["form_note"] = "form not computed; torsion in H_1";
  }
  return j;
}

inline std::string text(const InvariantReport& r) {
  std::ostringstream os;
  os << "euler characteristic: " << r.euler_characteristic << '\n';
  os << "H_1: " << r.h1.to_string() << '\n';
  os << "rank H_2: " << r.h2_rank << '\n';
  if (r.intersection_form) {
    os << "intersection form: " << r.intersection_form->matrix().to_string() << '\n';
    os << "form invariants: " << detail::form_invariants_text(*r.form_invariants) << '\n';
  } else {
    os << "intersection form: form not computed; torsion in H_1\n";
  }
  os << "boundary H_1: " << r.boundary_h1.to_string() << '\n';
  return os.str();
}

inline Json structured(const SteinReport& r) {
  Json hs = Json::array();
  for (const auto& v : r.handles) {
    Json h{{"id", v.id}, {"framing", detail::integer_json(v.framing)}};
    h["tb"] = v.tb ? Json(*v.tb) : Json(nullptr);
    h["verdict"] = to_string(v.verdict);
    hs.push_back(std::move(h));
  }
  return Json{{"handles", hs}, {"stein", r.overall}};
}

inline std::string text(const SteinReport& r) {
  std::ostringstream os;
  for (const auto& v : r.handles) {
    os << v.id << ": framing " << v.framing << ", tb ";
    if (v.tb)
      os << *v.tb;
    else
      os << "?";
    os << " -> " << to_string(v.verdict) << '\n';
  }
  os << "Stein: " << (r.overall ? "yes" : "no") << '\n';
  return os.str();
}

inline Json structured(const std::vector<LedgerEntry>& ledger) {
  Json out = Json::array();
  for (const auto& e : ledger) {
    Json checks = Json::array();
    for (const auto& c : e.checks)
      checks.push_back(Json{{"quantity", c.quantity}, {"expected", c.expected}, {"actual", c.actual}, {"held", c.held}});
    out.push_back(Json{{"step", e.step},
                       {"move", to_string(e.move)},
                       {"euler", e.after.euler},
                       {"form", detail::form_invariants_json(e.after.form)},
                       {"boundary_h1", e.after.boundary_h1.to_string()},
                       {"checks", checks}});
  }
  return out;
}

inline std::string text(const std::vector<LedgerEntry>& ledger) {
  std::ostringstream os;
  for (const auto& e : ledger) {
    os << "step " << e.step << ": " << to_string(e.move) << '\n';
    os << "  euler " << e.after.euler << ", " << detail::form_invariants_text(e.after.form) << ", boundary H_1 "
       << e.after.boundary_h1.to_string() << '\n';
    for (const auto& c : e.checks)
      os << "  " << (c.held ? "held " : "BROKE ") << c.quantity << " = " << c.actual << '\n';
  }
  if (ledger.empty()) os << "(empty script)\n";
  return os.str();
}

inline Json structured(const GenusBound& b) { return detail::bound_json(b); }

inline std::string text(const GenusBound& b) {
  std::ostringstream os;
  if (!b.class_description.empty()) os << b.class_description << ": ";
  os << "genus >= " << b.bound << " (" << to_string(b.branch) << ")\n";
  return os.str();
}

inline Json structured(const ExoticnessCertificate& c) {
  Json j{{"m", c.m}, {"n", c.n}, {"p", c.p}, {"q", c.q}};
  if (!c.applies()) {
    j["verdict"] = "NOT-APPLICABLE";
    j["reason"] = c.reason;
    return j;
  }
  j["regime"] = c.regime;
  j["r"] = c.r;
  j["n_form"] = c.k_variant;
  j["ambient"] = c.embedding.ambient.name();
  j["extra_blowups"] = c.extra_blowups;
  Json basic = Json::array();
  const auto& img = c.embedding.images.front();
  Json pairing{{"F", detail::integer_json(img.with_fiber)}};
  Json e = Json::array();
  for (const auto& v : img.with_exceptional) e.push_back(detail::integer_json(v));
  pairing["E"] = e;
  pairing["square"] = detail::integer_json(img.square);
  j["class_pairing"] = pairing;
  j["reconstructed_from"] = c.embedding.reconstructed_from;
  j["bound"] = detail::bound_json(c.bound);
  j["printed_bound"] = c.printed_bound.str();
  j["realized_genus"] = detail::integer_json(c.realized_genus);
  j["gap"] = detail::integer_json(c.gap);
  if (c.regime == 3) {
    Json rows = Json::array();
    for (const auto& r : c.sweep) {
      Json row{{"a", r.a}, {"K", detail::integer_json(r.k_value)}, {"square", detail::integer_json(r.square)}};
      if (r.bound) {
        row["bound"] = detail::integer_json(r.bound->bound);
        row["contradiction"] = r.contradiction;
      } else {
        row["bound"] = nullptr;
        row["note"] = "K + square odd; no characteristic class";
      }
      rows.push_back(std::move(row));
    }
    j["sweep"] = rows;
  }
  j["verdict"] = c.distinct ? "DISTINCT" : "INCONCLUSIVE";
  return j;
}

inline std::string text(const ExoticnessCertificate& c) {
  std::ostringstream os;
  os << "C1/C2(" << c.m << "," << c.n << "," << c.p << "," << c.q << ")\n";
  if (!c.applies()) {
    os << c.reason << '\n';
    return os.str();
  }
  os << "regime " << c.regime << ", r = " << c.r << " (n = " << c.k_variant << ")\n";
  os << "ambient: " << c.embedding.ambient.name() << ", " << c.extra_blowups << " extra blow-up(s)\n";
  os << "lower bound on genus of the generator: " << c.bound.bound << " (" << to_string(c.bound.branch)
     << ")\n";
  os << "realized genus on the twisted side: " << c.realized_genus << '\n';
  if (c.regime == 3) {
    os << "sweep over gamma' = a alpha' + x:\n";
    for (const auto& r : c.sweep) {
      os << "  a = " << r.a << ": ";
      if (r.bound)
        os << "genus >= " << r.bound->bound << (r.contradiction ? " (contradiction)" : "") << '\n';
      else
        os << "no characteristic class\n";
    }
  }
  os << (c.distinct ? "DISTINCT" : "INCONCLUSIVE") << ", gap >= " << c.gap << '\n';
  return os.str();
}

inline Json structured(const Comparison& c) {
  Json j{{"left", structured(c.left)}, {"right", structured(c.right)}};
  if (c.forms) {
    Json f{{"verdict", to_string(c.forms->verdict)}, {"reason", c.forms->reason}};
    f["witness"] = c.forms->witness ? detail::matrix_json(*c.forms->witness) : Json(nullptr);
    j["forms"] = f;
  }
  j["verdict"] = to_string(c.verdict);
  j["reason"] = c.reason;
  return j;
}

inline std::string text(const Comparison& c) {
  std::ostringstream os;
  os << "left:\n" << text(c.left) << "right:\n" << text(c.right);
  if (c.forms) {
    os << "forms: " << to_string(c.forms->verdict) << " (" << c.forms->reason << ")\n";
    if (c.forms->witness) os << "witness: " << c.forms->witness->to_string() << '\n';
  }
  os << "verdict: " << to_string(c.verdict) << '\n' << "reason: " << c.reason << '\n';
  return os.str();
}

inline Json structured(const Checklist& c) {
  Json claims = Json::array();
  for (const auto& x : c.claims) claims.push_back(Json{{"claim", x.name}, {"passed", x.passed}, {"detail", x.detail}});
  return Json{{"bundle", c.bundle}, {"claims", claims}, {"verdict", c.verdict}};
}

inline std::string text(const Checklist& c) {
  std::ostringstream os;
  os << c.bundle << '\n';
  for (const auto& x : c.claims) os << "  [" << (x.passed ? "pass" : "FAIL") << "] " << x.name << ": " << x.detail << '\n';
  os << "verdict: " << c.verdict << '\n';
  return os.str();
}

inline Json structured(const EllipticSummary& s) {
  Json k = Json::array();
  for (const auto& c : s.basic_classes) k.push_back(c.to_string());
  return Json{{"manifold", "E(" + std::to_string(s.n) + ")"},
              {"euler", s.euler},
              {"signature", s.signature},
              {"b2", s.b2},
              {"basic_classes", k}};
}

inline std::string text(const EllipticSummary& s) {
  std::ostringstream os;
  os << "E(" << s.n << "): euler " << s.euler << ", signature " << s.signature << ", b2 " << s.b2
     << ", basic classes";
  for (const auto& c : s.basic_classes) os << ' ' << c.to_string();
  if (s.basic_classes.empty()) os << " (not modeled for n < 2)";
  os << '\n';
  return os.str();
}

}  // namespace kirby
