#pragma once

// Basic-class bookkeeping for E(n) and its blow-ups, the adjunction
// inequality |K(a)| + a.a <= 2g - 2 (g >= 2), and the genus lower bounds and
// exoticness certificates for the C-family.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kirby/algebra.hpp"
#include "kirby/errors.hpp"
#include "kirby/handlebody.hpp"

namespace kirby {

// PD(fiber * F + sum exceptional[i] * E_{i+1}).
struct AmbientClass {
  Integer fiber = 0;
  std::vector<Integer> exceptional;

  AmbientClass operator-() const {
    AmbientClass c{-fiber, exceptional};
    for (auto& e : c.exceptional) e = -e;
    return c;
  }
  friend bool operator==(const AmbientClass&, const AmbientClass&) = default;
  friend bool operator<(const AmbientClass& a, const AmbientClass& b) {
    if (a.fiber != b.fiber) return a.fiber < b.fiber;
    return a.exceptional < b.exceptional;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](const Integer& c, const std::string& name) {
      if (c == 0) return;
      const Integer a = abs(c);
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (a != 1) os << a;
      os << name;
      first = false;
    };
    term(fiber, "F");
    for (std::size_t i = 0; i < exceptional.size(); ++i) term(exceptional[i], "E" + std::to_string(i + 1));
    return first ? "0" : os.str();
  }
};

// (n - 2) PD(F); its negative is the other extreme.
inline AmbientClass en_basic_class(long n) {
  if (n < 2) throw InputError("E(n) basic class needs n >= 2, got " + std::to_string(n));
  return AmbientClass{Integer(n - 2), {}};
}

inline std::vector<AmbientClass> en_basic_classes(long n) {
  const AmbientClass k = en_basic_class(n);
  std::set<AmbientClass> s{k, -k};
  return {s.begin(), s.end()};
}

// K +- E_{j+1} +- ... +- E_{j+k}, j the current exceptional count; sorted, deduplicated.
inline std::vector<AmbientClass> blow_up_classes(const std::vector<AmbientClass>& ks, std::size_t k) {
  std::set<AmbientClass> out;
  for (const auto& base : ks) {
    std::vector<AmbientClass> layer{base};
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<AmbientClass> next;
      for (const auto& c : layer)
        for (int s : {1, -1}) {
          AmbientClass d = c;
          d.exceptional.push_back(s);
          next.push_back(std::move(d));
        }
      layer = std::move(next);
    }
    for (auto& c : layer) {
      out.insert(-c);
      out.insert(std::move(c));
    }
  }
  return {out.begin(), out.end()};
}

// Ambient manifold E(n) # k CP^2-bar, with F.F = 0, F.E_i = 0, E_i.E_j = -delta_ij.
struct AmbientModel {
  long elliptic_index = 2;
  std::size_t exceptional_count = 0;
  std::vector<AmbientClass> basic_classes;

  static AmbientModel blown_up_elliptic(long n, std::size_t k) {
    return {n, k, blow_up_classes(en_basic_classes(n), k)};
  }

  std::string name() const {
    std::string s = "E(" + std::to_string(elliptic_index) + ")";
    if (exceptional_count > 0) s += " # " + std::to_string(exceptional_count) + " CP2-bar";
    return s;
  }

  IntegerMatrix pairing_matrix() const {
    IntegerMatrix m(exceptional_count + 1, exceptional_count + 1);
    for (std::size_t i = 1; i <= exceptional_count; ++i) m(i, i) = -1;
    return m;
  }
};

// The image of a class of the embedded piece: its pairings with F and E_i, and its square.
struct ClassPairing {
  Integer with_fiber = 0;
  std::vector<Integer> with_exceptional;
  Integer square = 0;
};

inline Integer evaluate(const AmbientClass& k, const ClassPairing& a) {
  if (k.exceptional.size() != a.with_exceptional.size())
    throw InputError("basic class and pairing data disagree on the exceptional count");
  Integer v = k.fiber * a.with_fiber;
  for (std::size_t i = 0; i < k.exceptional.size(); ++i) v += k.exceptional[i] * a.with_exceptional[i];
  return v;
}

struct AmbientEmbedding {
  AmbientModel ambient;
  std::vector<ClassPairing> images;
  std::string reconstructed_from;  // the printed bound the pairing data must reproduce
};

enum class GenusBranch { adjunction, degenerate };

inline const char* to_string(GenusBranch b) {
  return b == GenusBranch::adjunction ? "adjunction" : "degenerate";
}

struct GenusBound {
  std::string class_description;
  Integer bound = 0;
  GenusBranch branch = GenusBranch::degenerate;
};

// The right side (|K| + sq + 2) / 2 as an exact rational, with no branch logic.
inline Rational adjunction_value(const Integer& k_alpha, const Integer& alpha_sq) {
  return Rational(abs(k_alpha) + alpha_sq + 2, 2);
}

inline GenusBound min_genus(const Integer& k_alpha, const Integer& alpha_sq, std::string description = {}) {
  if ((k_alpha + alpha_sq) % 2 != 0)
    throw InputError("K(a) + a.a = " + Integer(k_alpha + alpha_sq).str() +
                     " is odd; K must be characteristic");
  GenusBound b;
  b.class_description = std::move(description);
  const Integer s = abs(k_alpha) + alpha_sq;
  if (s > 0) {
    b.bound = (s + 2) / 2;
    b.branch = GenusBranch::adjunction;
  }
  return b;
}

// Strongest bound over all basic classes of the model.
inline GenusBound min_genus(const AmbientModel& model, const ClassPairing& a, std::string description = {}) {
  if (model.basic_classes.empty()) throw InputError("ambient model has no basic classes");
  Integer best = -1;
  for (const auto& k : model.basic_classes) best = std::max(best, abs(evaluate(k, a)));
  return min_genus(best, a.square, std::move(description));
}

// ---------------------------------------------------------------------------
// C-family certificates

inline Integer stein_ceiling(long p) {  // p^2 - 3p + 1, the largest m the theorem allows
  const Integer pp = p;
  return pp * pp - 3 * pp + 1;
}

inline Integer torus_knot_genus(long p) {  // Seifert genus of T(p, p-1): (p^2 - 3p + 2) / 2
  const Integer pp = p;
  return (pp * pp - 3 * pp + 2) / 2;
}

struct SweepRow {
  long a = 0;
  Integer k_value = 0;
  Integer square = 0;
  std::optional<GenusBound> bound;  // absent when a gives an odd K + sq
  bool contradiction = false;       // bound exceeds the realized genus
};

struct ExoticnessCertificate {
  long m = 0, n = 0, p = 0, q = 0;
  int regime = 0;                  // 1, 2, 3; 0 when the theorem does not apply
  std::string reason;              // why it does not apply
  long r = 0;
  std::string k_variant;           // which of 3r-2, 3r-1, 3r n equals
  long extra_blowups = 0;          // blow-ups beyond the 2r - 1 of the model
  AmbientEmbedding embedding;
  GenusBound bound;                // for the generator (a = 1)
  Rational printed_bound;          // 1/2 (p^2 - 3p + 2r + 2)
  Integer realized_genus = 0;      // genus of the C_2-side surface
  Integer gap = 0;
  bool distinct = false;
  std::vector<SweepRow> sweep;     // regime 3 only

  bool applies() const { return regime != 0; }
};

namespace detail {

inline int theorem_regime(long m, long n, long p, long q) {
  const Integer ceiling = stein_ceiling(p);
  if (q == 0 && n >= 4 && p >= 1 && m <= ceiling) return 1;
  if (q == 0 && n >= 1 && n <= 3 && p >= 3 && m <= ceiling) return 2;
  if (q >= 1 && n >= 1 && p >= 1 && m >= 0 && m <= ceiling) return 3;
  return 0;
}

}  // namespace detail

// Embedding data for the generator alpha' of H_2(C_1) in E(p + q + 2r + 1) # (2r - 1 + j) CP^2-bar:
// alpha'.F = 0, alpha'.E_i = 1 for every exceptional class, alpha'^2 = m.
inline AmbientEmbedding c_family_embedding(long m, long p, long q, long r, long extra) {
  const std::size_t k = static_cast<std::size_t>(2 * r - 1 + extra);
  AmbientEmbedding e;
  e.ambient = AmbientModel::blown_up_elliptic(p + q + 2 * r + 1, k);
  e.images.push_back(ClassPairing{0, std::vector<Integer>(k, Integer(1)), Integer(m)});
  e.reconstructed_from = "g >= 1/2 (p^2 - 3p + 2r + 2)";
  return e;
}

inline ExoticnessCertificate exoticness_certificate(long m, long n, long p, long q, long a_max = 16) {
  ExoticnessCertificate c;
  c.m = m;
  c.n = n;
  c.p = p;
  c.q = q;
  if (q < 0) throw InputError("q must be nonnegative");
  c.regime = detail::theorem_regime(m, n, p, q);
  if (!c.applies()) {
    if (q == 0 && n >= 1 && n <= 3 && p >= 1 && p <= 2)
      c.reason = "theorem does not apply: excluded corner n <= 3, p <= 2, q = 0";
    else
      c.reason = "theorem does not apply: (m, n, p, q) lies outside all three regimes";
    return c;
  }
  c.r = (n + 2) / 3;
  const long k = n - 3 * (c.r - 1);
  c.k_variant = k == 1 ? "3r-2" : k == 2 ? "3r-1" : "3r";
  c.extra_blowups = static_cast<long>(stein_ceiling(p) - m);
  c.embedding = c_family_embedding(m, p, q, c.r, c.extra_blowups);
  c.realized_genus = torus_knot_genus(p);

  const ClassPairing& alpha = c.embedding.images.front();
  c.bound = min_genus(c.embedding.ambient, alpha, "alpha' (generator of H_2(C_1))");
  const Integer pp = p;
  c.printed_bound = Rational(pp * pp - 3 * pp + 2 * c.r + 2, 2);
  if (Rational(c.bound.bound) != c.printed_bound || c.bound.branch != GenusBranch::adjunction)
    throw InvariantViolation("reconstructed embedding gives bound " + c.bound.bound.str() +
                             ", printed bound is " + c.printed_bound.str());
  c.gap = c.bound.bound - c.realized_genus;
  c.distinct = c.bound.bound > c.realized_genus;

  if (c.regime == 3) {
    const Integer k_alpha = static_cast<long>(alpha.with_exceptional.size());
    for (long a = 1; a <= a_max; ++a) {
      SweepRow row{a, a * k_alpha, Integer(m), std::nullopt, false};
      if ((row.k_value + row.square) % 2 == 0) {
        row.bound = min_genus(row.k_value, row.square, "gamma' = " + std::to_string(a) + " alpha' + x");
        row.contradiction = row.bound->bound > c.realized_genus;
        if (c.extra_blowups == 0) {
          const Rational printed(pp * pp - 3 * pp + 3 + a * (2 * c.r - 1), 2);
          if (Rational(row.bound->bound) != printed)
            throw InvariantViolation("sweep bound at a = " + std::to_string(a) + " differs from the printed formula");
        }
      }
      c.sweep.push_back(std::move(row));
    }
    for (const auto& row : c.sweep)
      if (row.bound && !row.contradiction) c.distinct = false;
  }
  return c;
}

// Lower bound on G(C_1(m, 3r-2, p, 0)) minus the realized genus on the C_2 side.
inline Integer genus_gap(long m, long p, long r) {
  if (r < 2) throw InputError("genus_gap needs r >= 2");
  if (p < 1) throw InputError("genus_gap needs p >= 1");
  if (m > stein_ceiling(p)) throw InputError("genus_gap needs m <= p^2 - 3p + 1");
  const Integer k_alpha = 2 * r - 1 + (stein_ceiling(p) - m);
  return min_genus(k_alpha, Integer(m)).bound - torus_knot_genus(p);
}

// ---------------------------------------------------------------------------
// Square-zero torus classes

struct TorusSearch {
  long bound = 0;
  std::size_t square_zero_classes = 0;
  std::vector<std::vector<Integer>> torus_compatible;  // nonzero, square 0, |K(c)| = 0 for every K
};

// Classes c = sum coeff_i x_i with |coeff_i| <= bound. `pairing` has one row per
// x_i and one column per exceptional class; F pairs to zero with every x_i.
inline TorusSearch square_zero_torus_search(const SymmetricForm& form, const IntegerMatrix& pairing,
                                            const AmbientModel& model, long bound) {
  const std::size_t d = form.dimension();
  if (pairing.rows() != d || pairing.cols() != model.exceptional_count)
    throw InputError("pairing data has the wrong shape");
  TorusSearch out;
  out.bound = bound;
  std::vector<Integer> coeff(d, Integer(-bound));
  if (d == 0) return out;
  for (;;) {
    bool nonzero = false;
    for (const auto& v : coeff) nonzero = nonzero || v != 0;
    if (nonzero) {
      Integer sq = 0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) sq += coeff[i] * form.matrix()(i, j) * coeff[j];
      if (sq == 0) {
        ++out.square_zero_classes;
        ClassPairing cp{0, std::vector<Integer>(model.exceptional_count, Integer(0)), 0};
        for (std::size_t e = 0; e < model.exceptional_count; ++e)
          for (std::size_t i = 0; i < d; ++i) cp.with_exceptional[e] += coeff[i] * pairing(i, e);
        // Torus case of the adjunction inequality: |K(c)| + c.c <= 0.
        bool passes = true;
        for (const auto& k : model.basic_classes) passes = passes && evaluate(k, cp) == 0;
        if (passes) out.torus_compatible.push_back(coeff);
      }
    }
    std::size_t i = 0;
    while (i < d && coeff[i] == bound) coeff[i++] = -bound;
    if (i == d) break;
    ++coeff[i];
  }
  return out;
}

struct GenusOneWitness {
  std::string component;             // 0-framed 2-handle whose class is the witness
  long genus = 0;                    // asserted genus of a representing surface
  std::vector<Integer> coordinates;  // in the restricted-form basis
  Integer square = 0;
};

// The class of a 0-framed 2-handle algebraically unlinked from every dotted
// circle, in restricted-form coordinates. Its square is computed; the surface
// genus is the component's recorded Seifert genus, which the caller asserts
// survives into the 4-manifold.
inline GenusOneWitness genus_one_witness(const HandleDecomposition& h, const std::string& id) {
  const H2Form f = restricted_form(h);
  const auto twos = h.two_handle_indices();
  const Component& c = h.component(id);
  if (c.is_dotted() || *c.framing != 0) throw InputError("witness '" + id + "' must be a 0-framed 2-handle");
  if (!c.seifert_genus) throw InputError("witness '" + id + "' has no recorded genus");
  for (std::size_t d : h.dotted_indices())
    if (h.lk(id, h.components[d].id) != 0) throw InputError("witness '" + id + "' links a dotted circle");
  std::size_t t = 0;
  while (h.components[twos[t]].id != id) ++t;
  // Solve basis * y = e_t; e_t lies in ker(boundary), which the basis spans.
  const IntegerMatrix& b = f.basis;
  IntegerMatrix target(b.rows(), 1);
  target(t, 0) = 1;
  const SmithForm s = smith_normal_form(b);
  const IntegerMatrix ut = s.U * target;
  std::vector<Integer> y(b.cols(), Integer(0));
  for (std::size_t i = 0; i < ut.rows(); ++i) {
    const bool ok = i < s.rank ? ut(i, 0) % s.D(i, i) == 0 : ut(i, 0) == 0;
    if (!ok) throw InputError("witness '" + id + "' is not in the span of the H_2 basis");
    if (i < s.rank) y[i] = ut(i, 0) / s.D(i, i);
  }
  GenusOneWitness w{id, *c.seifert_genus, std::vector<Integer>(b.cols(), Integer(0)), 0};
  for (std::size_t i = 0; i < b.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) w.coordinates[i] += s.V(i, j) * y[j];
  for (std::size_t i = 0; i < b.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      w.square += w.coordinates[i] * f.form.matrix()(i, j) * w.coordinates[j];
  return w;
}

}  // namespace kirby
