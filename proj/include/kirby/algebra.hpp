#pragma once

// Exact integer linear algebra: Smith normal form, kernels and cokernels,
// symmetric bilinear form invariants and bounded-search form equivalence.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kirby/errors.hpp"
#include "kirby/matrix.hpp"

namespace kirby {

// Finitely generated abelian group Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with
// d_i >= 2 and d_i | d_{i+1}. The representation is canonical.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_torsion_free() const { return invariant_factors.empty(); }

  static AbelianGroup cyclic(const Integer& order) {
    AbelianGroup g;
    const Integer m = abs(order);
    if (m == 0)
      g.free_rank = 1;
    else if (m >= 2)
      g.invariant_factors.push_back(m);
    return g;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  // "0", "Z", "Z/3", "Z^2 + Z/2 + Z/4".
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << 'Z';
      if (free_rank > 1) os << '^' << free_rank;
      first = false;
    }
    for (const auto& d : invariant_factors) {
      if (!first) os << " + ";
      os << "Z/" << d;
      first = false;
    }
    return os.str();
  }
};

struct SmithForm {
  IntegerMatrix U;  // rows x rows, unimodular
  IntegerMatrix D;  // rows x cols, diagonal
  IntegerMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline bool find_min_pivot(const IntegerMatrix& a, std::size_t t, std::size_t& pi,
                           std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!found || v < best) {
        best = v;
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace detail

// U * M * V = D with U, V unimodular and D diagonal, nonnegative, d_1 | d_2 | ...
// Pivots are chosen by smallest nonzero absolute value.
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  SmithForm s{IntegerMatrix::identity(m.rows()), m, IntegerMatrix::identity(m.cols()), 0};
  IntegerMatrix& a = s.D;
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!detail::find_min_pivot(a, t, pi, pj)) break;
    for (;;) {
      a.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      a.swap_cols(t, pj);
      s.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        detail::find_min_pivot(a, t, pi, pj);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            s.U.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
      pi = t;
      pj = t;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      s.U.negate_row(t);
    }
    s.rank = t + 1;
  }
  return s;
}

inline std::size_t rank(const IntegerMatrix& m) { return smith_normal_form(m).rank; }

// coker(M : Z^cols -> Z^rows).
inline AbelianGroup cokernel(const IntegerMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  AbelianGroup g;
  g.free_rank = m.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) >= 2) g.invariant_factors.push_back(s.D(i, i));
  return g;
}

// Columns form a Z-basis of ker(M), a direct summand of Z^cols. Each column is
// normalized so that its first nonzero entry is positive.
inline IntegerMatrix kernel_basis(const IntegerMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  IntegerMatrix k = s.V.columns(s.rank, m.cols() - s.rank);
  for (std::size_t j = 0; j < k.cols(); ++j)
    for (std::size_t i = 0; i < k.rows(); ++i) {
      if (k(i, j) == 0) continue;
      if (k(i, j) < 0) k.negate_col(j);
      break;
    }
  return k;
}

// ---------------------------------------------------------------------------
// Symmetric bilinear forms

class SymmetricForm {
 public:
  SymmetricForm() = default;
  explicit SymmetricForm(IntegerMatrix m) : matrix_(std::move(m)) {
    if (!matrix_.is_symmetric()) throw InputError("form matrix is not symmetric");
  }

  static SymmetricForm diagonal(const std::vector<Integer>& d) {
    return SymmetricForm(IntegerMatrix::diagonal(d));
  }

  const IntegerMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return matrix_.rows(); }

  // T^t Q T
  SymmetricForm congruent(const IntegerMatrix& t) const {
    return SymmetricForm(t.transpose() * matrix_ * t);
  }

  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

 private:
  IntegerMatrix matrix_;
};

inline SymmetricForm direct_sum(const SymmetricForm& a, const SymmetricForm& b) {
  return SymmetricForm(direct_sum(a.matrix(), b.matrix()));
}

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct FormInvariants {
  std::size_t rank = 0;  // rank over Q
  long signature = 0;
  Parity parity = Parity::even;
  Integer det_abs = 1;

  friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
};

// Positive and negative inertia via exact rational congruence diagonalization.
// Zero pivots are handled by adding a row/column pair with a nonzero
// off-diagonal entry; an identically zero remainder contributes nothing.
inline std::pair<std::size_t, std::size_t> inertia(const SymmetricForm& q) {
  const std::size_t n = q.dimension();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(q.matrix()(i, j));

  auto swap_index = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    std::swap(a[x], a[y]);
    for (auto& row : a) std::swap(row[x], row[y]);
  };

  std::size_t pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      std::size_t oi = n, oj = n;
      for (std::size_t i = k; i < n && oi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == n) break;  // remaining block is zero
      // e_oi <- e_oi + e_oj makes the diagonal entry 2 a[oi][oj] != 0.
      for (std::size_t c = 0; c < n; ++c) a[oi][c] += a[oj][c];
      for (std::size_t r = 0; r < n; ++r) a[r][oi] += a[r][oj];
      piv = oi;
    }
    swap_index(k, piv);
    const Rational p = a[k][k];
    (p > 0 ? pos : neg) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / p;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][i] -= f * a[r][k];
    }
  }
  return {pos, neg};
}

inline FormInvariants form_invariants(const SymmetricForm& q) {
  FormInvariants inv;
  const auto [pos, neg] = inertia(q);
  inv.rank = pos + neg;
  inv.signature = static_cast<long>(pos) - static_cast<long>(neg);
  inv.parity = Parity::even;
  for (std::size_t i = 0; i < q.dimension(); ++i)
    if (q.matrix()(i, i) % 2 != 0) inv.parity = Parity::odd;
  inv.det_abs = abs(determinant(q.matrix()));
  return inv;
}

enum class Equivalence { equivalent, distinct, unknown };

inline const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::distinct: return "distinct";
    case Equivalence::unknown: return "unknown";
  }
  return "?";
}

struct EquivalenceResult {
  Equivalence verdict = Equivalence::unknown;
  std::string reason;
  std::optional<IntegerMatrix> witness;  // T with T^t Q1 T = Q2
  std::size_t candidates_examined = 0;
};

namespace detail {

struct ColumnSearch {
  const IntegerMatrix& q1;
  const IntegerMatrix& q2;
  std::vector<std::vector<std::vector<Integer>>> candidates;  // per target column
  std::vector<std::vector<Integer>> chosen;
  std::size_t examined = 0;

  Integer pair(const std::vector<Integer>& u, const std::vector<Integer>& v) const {
    Integer s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * q1(i, j) * v[j];
    }
    return s;
  }

  bool search(std::size_t col) {
    const std::size_t n = q1.rows();
    if (col == n) {
      IntegerMatrix t(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) t(i, j) = chosen[j][i];
      return abs(determinant(t)) == 1;
    }
    for (const auto& v : candidates[col]) {
      ++examined;
      bool ok = true;
      for (std::size_t j = 0; j < col && ok; ++j) ok = pair(chosen[j], v) == q2(j, col);
      if (!ok) continue;
      chosen.push_back(v);
      if (search(col + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace detail

// Sound in both directions it claims: "distinct" only when a congruence
// invariant differs, "equivalent" only with an explicit unimodular witness
// whose entries are bounded by search_bound. Otherwise "unknown".
inline EquivalenceResult forms_equivalent(const SymmetricForm& q1, const SymmetricForm& q2,
                                          int search_bound,
                                          std::size_t box_budget = 4'000'000) {
  if (search_bound < 1) throw InputError("search bound must be positive");
  EquivalenceResult r;
  if (q1.dimension() != q2.dimension()) {
    r.verdict = Equivalence::distinct;
    r.reason = "dimension differs";
    return r;
  }
  const FormInvariants a = form_invariants(q1), b = form_invariants(q2);
  if (a.rank != b.rank) r.reason = "rank differs";
  else if (a.signature != b.signature) r.reason = "signature differs";
  else if (a.parity != b.parity) r.reason = "parity differs";
  else if (a.det_abs != b.det_abs) r.reason = "|det| differs";
  else if (!(cokernel(q1.matrix()) == cokernel(q2.matrix())))
    r.reason = "discriminant group differs";
  if (!r.reason.empty()) {
    r.verdict = Equivalence::distinct;
    return r;
  }

  const std::size_t n = q1.dimension();
  if (n == 0 || q1.matrix() == q2.matrix()) {
    r.verdict = Equivalence::equivalent;
    r.reason = "identical matrices";
    r.witness = IntegerMatrix::identity(n);
    return r;
  }

  // Enumerate the box [-b, b]^n once, bucketing vectors by their norm.
  const std::size_t side = 2 * static_cast<std::size_t>(search_bound) + 1;
  std::size_t box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (box > box_budget / side) {
      r.reason = "search box exceeds budget";
      return r;
    }
    box *= side;
  }
  detail::ColumnSearch cs{q1.matrix(), q2.matrix(), {}, {}, 0};
  cs.candidates.resize(n);
  std::vector<Integer> v(n, -search_bound);
  for (std::size_t count = 0; count < box; ++count) {
    const Integer norm = cs.pair(v, v);
    for (std::size_t j = 0; j < n; ++j)
      if (norm == q2.matrix()(j, j)) cs.candidates[j].push_back(v);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] < search_bound) {
        ++v[i];
        break;
      }
      v[i] = -search_bound;
    }
  }
  if (cs.search(0)) {
    IntegerMatrix t(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) t(i, j) = cs.chosen[j][i];
    r.verdict = Equivalence::equivalent;
    r.reason = "unimodular witness found";
    r.witness = t;
  } else {
    r.reason = "invariants agree; no witness with entries bounded by " +
               std::to_string(search_bound);
  }
  r.candidates_examined = cs.examined;
  return r;
}

}  // namespace kirby
