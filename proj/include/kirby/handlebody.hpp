#pragma once

// Handle decompositions of compact 4-manifolds as framed links with dotted
// circles, and their algebraic-topology invariants.
//
// One 0-handle is implicit. Dotted circles are 1-handles, framed components
// are 2-handles, 3-handles are only counted. Linking numbers are algebraic.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kirby/algebra.hpp"
#include "kirby/errors.hpp"
#include "kirby/grid.hpp"
#include "kirby/matrix.hpp"

namespace kirby {

enum class ComponentKind { dotted, two_handle };

inline const char* to_string(ComponentKind k) {
  return k == ComponentKind::dotted ? "dotted" : "two_handle";
}

struct Component {
  std::string id;
  ComponentKind kind = ComponentKind::two_handle;
  std::optional<Integer> framing;              // present iff two_handle
  std::optional<GridDiagram> attaching_grid;   // Legendrian witness, if any
  std::optional<long> seifert_genus;           // genus of the attaching knot, when known

  bool is_dotted() const noexcept { return kind == ComponentKind::dotted; }

  static Component dotted(std::string id) {
    return Component{std::move(id), ComponentKind::dotted, std::nullopt, std::nullopt, std::nullopt};
  }
  static Component framed(std::string id, Integer framing) {
    return Component{std::move(id), ComponentKind::two_handle, std::move(framing), std::nullopt,
                     std::nullopt};
  }

  friend bool operator==(const Component&, const Component&) = default;
};

struct Metadata {
  std::string name;
  bool asserted_simply_connected = false;
  bool reconstructed = false;
  // Designated cork sublink: (dotted circle, 0-framed partner).
  std::optional<std::pair<std::string, std::string>> cork;
  // Designated plug pair, same shape.
  std::optional<std::pair<std::string, std::string>> plug;

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

using LinkKey = std::pair<std::string, std::string>;

inline LinkKey link_key(const std::string& a, const std::string& b) {
  return a < b ? LinkKey{a, b} : LinkKey{b, a};
}

struct HandleDecomposition {
  std::vector<Component> components;
  std::map<LinkKey, Integer> linking;  // unordered pairs of distinct ids
  std::size_t three_handles = 0;
  Metadata metadata;

  std::optional<std::size_t> index_of(const std::string& id) const {
    for (std::size_t i = 0; i < components.size(); ++i)
      if (components[i].id == id) return i;
    return std::nullopt;
  }
  bool contains(const std::string& id) const { return index_of(id).has_value(); }

  const Component& component(const std::string& id) const {
    auto i = index_of(id);
    if (!i) throw InputError("unknown component '" + id + "'");
    return components[*i];
  }
  Component& component(const std::string& id) {
    auto i = index_of(id);
    if (!i) throw InputError("unknown component '" + id + "'");
    return components[*i];
  }

  Integer lk(const std::string& a, const std::string& b) const {
    if (a == b) throw InputError("self-linking of '" + a + "' is the framing, not a linking number");
    auto it = linking.find(link_key(a, b));
    if (it == linking.end()) throw InputError("linking of '" + a + "' and '" + b + "' is undefined");
    return it->second;
  }
  void set_lk(const std::string& a, const std::string& b, Integer v) {
    if (a == b) throw InputError("cannot set self-linking of '" + a + "'");
    linking[link_key(a, b)] = std::move(v);
  }

  // Appends c, unlinked from everything already present.
  void add_component(Component c) {
    if (contains(c.id)) throw InputError("duplicate component id '" + c.id + "'");
    for (const auto& other : components) linking[link_key(other.id, c.id)] = 0;
    components.push_back(std::move(c));
  }

  void remove_component(const std::string& id) {
    auto i = index_of(id);
    if (!i) throw InputError("unknown component '" + id + "'");
    for (auto it = linking.begin(); it != linking.end();)
      it = (it->first.first == id || it->first.second == id) ? linking.erase(it) : std::next(it);
    components.erase(components.begin() + static_cast<std::ptrdiff_t>(*i));
  }

  std::vector<std::size_t> dotted_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < components.size(); ++i)
      if (components[i].is_dotted()) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> two_handle_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < components.size(); ++i)
      if (!components[i].is_dotted()) out.push_back(i);
    return out;
  }

  std::string fresh_id(const std::string& prefix) const {
    for (std::size_t k = 1;; ++k) {
      std::string id = prefix + std::to_string(k);
      if (!contains(id)) return id;
    }
  }

  friend bool operator==(const HandleDecomposition&, const HandleDecomposition&) = default;
};

// Empty list iff every structural invariant holds.
inline std::vector<std::string> validate(const HandleDecomposition& h) {
  std::vector<std::string> out;
  const auto& cs = h.components;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Component& c = cs[i];
    if (c.id.empty()) out.push_back("component " + std::to_string(i) + " has an empty id");
    for (std::size_t j = 0; j < i; ++j)
      if (cs[j].id == c.id) out.push_back("duplicate component id '" + c.id + "'");
    if (c.is_dotted() && c.framing)
      out.push_back("dotted component '" + c.id + "' carries a framing");
    if (!c.is_dotted() && !c.framing)
      out.push_back("2-handle '" + c.id + "' has no framing");
    if (c.attaching_grid && c.attaching_grid->component_count() != 1)
      out.push_back("attaching grid of '" + c.id + "' is not a knot");
  }
  for (const auto& [key, value] : h.linking) {
    if (key.first == key.second) out.push_back("self-linking entry for '" + key.first + "'");
    if (!h.contains(key.first) || !h.contains(key.second))
      out.push_back("linking entry (" + key.first + ", " + key.second + ") names an unknown component");
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      auto it = h.linking.find(link_key(cs[i].id, cs[j].id));
      if (it == h.linking.end()) {
        out.push_back("linking of '" + cs[i].id + "' and '" + cs[j].id + "' is missing");
        continue;
      }
      if (cs[i].is_dotted() && cs[j].is_dotted() && it->second != 0)
        out.push_back("dotted circles '" + cs[i].id + "' and '" + cs[j].id +
                      "' are linked; 1-handles must form an unlink");
    }
  if (h.metadata.cork) {
    const auto& [d, p] = *h.metadata.cork;
    if (!h.contains(d) || !h.contains(p))
      out.push_back("cork designation names an unknown component");
  }
  if (h.metadata.plug) {
    const auto& [d, p] = *h.metadata.plug;
    if (!h.contains(d) || !h.contains(p))
      out.push_back("plug designation names an unknown component");
  }
  return out;
}

inline void require_valid(const HandleDecomposition& h) {
  const auto diags = validate(h);
  if (diags.empty()) return;
  std::string msg = "invalid handle decomposition:";
  for (const auto& d : diags) msg += "\n  " + d;
  throw InputError(msg);
}

// Symmetric linking matrix over all components in order; dotted circles get
// framing 0 and 2-handles their framing.
inline IntegerMatrix linking_matrix(const HandleDecomposition& h) {
  const std::size_t n = h.components.size();
  IntegerMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Component& c = h.components[i];
    l(i, i) = c.is_dotted() ? Integer(0) : *c.framing;
    for (std::size_t j = i + 1; j < n; ++j) {
      l(i, j) = h.lk(c.id, h.components[j].id);
      l(j, i) = l(i, j);
    }
  }
  return l;
}

// Cellular boundary Z^{2-handles} -> Z^{1-handles}.
inline IntegerMatrix boundary_map(const HandleDecomposition& h) {
  return linking_matrix(h).select(h.dotted_indices(), h.two_handle_indices());
}

namespace detail {

inline IntegerMatrix inverse_unimodular(const IntegerMatrix& u) {
  const std::size_t n = u.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(u(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw InvariantViolation("singular change of basis");
    std::swap(a[k], a[p]);
    const Rational piv = a[k][k];
    for (auto& v : a[k]) v /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  IntegerMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a[i][n + j];
      if (denominator(v) != 1) throw InvariantViolation("change of basis is not unimodular");
      inv(i, j) = numerator(v);
    }
  return inv;
}

}  // namespace detail

// Presentation matrix for H_1 of the boundary 3-manifold: the full linking
// matrix, plus one appended relation per 3-handle killing a free generator.
inline IntegerMatrix boundary_presentation(const HandleDecomposition& h) {
  require_valid(h);
  const IntegerMatrix l = linking_matrix(h);
  if (h.three_handles == 0) return l;
  const SmithForm s = smith_normal_form(l);
  const std::size_t free_rank = l.rows() - s.rank;
  if (free_rank < h.three_handles)
    throw InputError("more 3-handles than free classes in the boundary");
  const IntegerMatrix u_inv = detail::inverse_unimodular(s.U);
  return l.append_columns(u_inv.columns(l.rows() - h.three_handles, h.three_handles));
}

struct Homology {
  AbelianGroup h1;
  std::size_t h2_rank = 0;

  friend bool operator==(const Homology&, const Homology&) = default;
};

inline Homology homology(const HandleDecomposition& h) {
  require_valid(h);
  const IntegerMatrix d = boundary_map(h);
  Homology out;
  out.h1 = cokernel(d);
  const std::size_t kernel_rank = d.cols() - rank(d);
  if (h.three_handles > kernel_rank)
    throw InputError("3-handle count exceeds the rank of ker(boundary)");
  out.h2_rank = kernel_rank - h.three_handles;
  return out;
}

// The form on H_2 as the framing/linking matrix restricted to ker(boundary),
// with one null class dropped per 3-handle. Defined whether or not H_1 has
// torsion; `basis` columns are in 2-handle coordinates.
struct H2Form {
  IntegerMatrix basis;
  SymmetricForm form;
};

inline H2Form restricted_form(const HandleDecomposition& h) {
  require_valid(h);
  const IntegerMatrix l = linking_matrix(h);
  const auto twos = h.two_handle_indices();
  const IntegerMatrix l22 = l.select(twos, twos);
  IntegerMatrix k = kernel_basis(boundary_map(h));
  if (h.three_handles > k.cols())
    throw InputError("3-handle count exceeds the rank of ker(boundary)");
  if (h.three_handles > 0) {
    const IntegerMatrix qk = k.transpose() * l22 * k;
    const SmithForm s = smith_normal_form(qk);
    if (qk.cols() - s.rank < h.three_handles)
      throw InputError("3-handles need null classes in H_2, but the radical is too small");
    k = (k * s.V).columns(0, k.cols() - h.three_handles);
  }
  return {k, SymmetricForm(k.transpose() * l22 * k)};
}

inline SymmetricForm intersection_form(const HandleDecomposition& h) {
  if (!homology(h).h1.is_torsion_free())
    throw InputError("form not computed; torsion in H_1");
  return restricted_form(h).form;
}

inline long euler_characteristic(const HandleDecomposition& h) {
  const long dotted = static_cast<long>(h.dotted_indices().size());
  const long twos = static_cast<long>(h.two_handle_indices().size());
  return 1 - dotted + twos - static_cast<long>(h.three_handles);
}

struct InvariantReport {
  long euler_characteristic = 0;
  AbelianGroup h1;
  std::size_t h2_rank = 0;
  std::optional<SymmetricForm> intersection_form;  // absent when H_1 has torsion
  AbelianGroup boundary_h1;
  std::optional<FormInvariants> form_invariants;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

inline InvariantReport invariant_report(const HandleDecomposition& h) {
  require_valid(h);
  InvariantReport r;
  r.euler_characteristic = euler_characteristic(h);
  const Homology hom = homology(h);
  r.h1 = hom.h1;
  r.h2_rank = hom.h2_rank;
  r.boundary_h1 = cokernel(boundary_presentation(h));
  if (hom.h1.is_torsion_free()) {
    r.intersection_form = restricted_form(h).form;
    r.form_invariants = form_invariants(*r.intersection_form);
    if (r.intersection_form->dimension() != r.h2_rank)
      throw InvariantViolation("intersection form dimension differs from rank H_2");
  }
  const long from_betti =
      1 - static_cast<long>(r.h1.free_rank) + static_cast<long>(r.h2_rank);
  if (from_betti != r.euler_characteristic)
    throw InvariantViolation("Euler characteristic disagrees with Betti numbers");
  return r;
}

}  // namespace kirby
