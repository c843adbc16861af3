#pragma once

// Shared generators and oracles for the unit and acceptance suites.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kirby/kirby.hpp"

namespace kirby::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntegerMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

// Product of random elementary operations; determinant +-1.
inline IntegerMatrix random_unimodular(Rng& rng, std::size_t n, int ops = 8) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n == 0) return u;
  for (int k = 0; k < ops; ++k) {
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    const std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    switch (uniform(rng, 0, 2)) {
      case 0:
        if (i != j) u.add_col_multiple(i, j, Integer(uniform(rng, -2, 2)));
        break;
      case 1: u.swap_cols(i, j); break;
      default: u.negate_col(i); break;
    }
  }
  return u;
}

// Up to `max_components` components, entries bounded by `bound`; dotted circles unlinked.
inline HandleDecomposition random_decomposition(Rng& rng, std::size_t max_components = 8, long bound = 5) {
  HandleDecomposition h;
  const long total = uniform(rng, 1, static_cast<long>(max_components));
  const long dotted = uniform(rng, 0, std::min<long>(2, total - 1));
  for (long i = 0; i < total; ++i) {
    if (i < dotted)
      h.add_component(Component::dotted("d" + std::to_string(i + 1)));
    else
      h.add_component(Component::framed("k" + std::to_string(i - dotted + 1), uniform(rng, -bound, bound)));
  }
  for (std::size_t i = 0; i < h.components.size(); ++i)
    for (std::size_t j = i + 1; j < h.components.size(); ++j) {
      if (h.components[i].is_dotted() && h.components[j].is_dotted()) continue;
      h.set_lk(h.components[i].id, h.components[j].id, uniform(rng, -bound, bound));
    }
  return h;
}

// Candidate steps whose preconditions hold on h.
inline std::vector<MoveStep> applicable_moves(const HandleDecomposition& h) {
  std::vector<MoveStep> out;
  const auto twos = h.two_handle_indices();
  const auto dots = h.dotted_indices();
  auto id = [&](std::size_t i) { return h.components[i].id; };
  auto links_dotted = [&](std::size_t i) {
    for (std::size_t d : dots)
      if (d != i && h.lk(id(i), id(d)) != 0) return true;
    return false;
  };
  for (std::size_t i : twos)
    for (std::size_t j = 0; j < h.components.size(); ++j)
      if (i != j)
        for (int s : {1, -1}) out.push_back(MoveStep::slide(id(i), id(j), s));
  out.push_back(MoveStep::blow_up(1));
  out.push_back(MoveStep::blow_up(-1));
  out.push_back(MoveStep::add_pair());
  for (std::size_t i : twos) {
    const Integer& f = *h.components[i].framing;
    if ((f == 1 || f == -1) && !links_dotted(i)) out.push_back(MoveStep::blow_down(id(i)));
    if (f == 0 && !links_dotted(i)) out.push_back(MoveStep::swap(id(i)));
    if (f == 0 && h.three_handles > 0) {
      bool free = true;
      for (const auto& c : h.components)
        if (c.id != id(i) && h.lk(id(i), c.id) != 0) free = false;
      if (free) out.push_back(MoveStep::drop_pair(id(i)));
    }
  }
  for (std::size_t d : dots) {
    out.push_back(MoveStep::swap(id(d)));
    for (std::size_t i : twos) {
      const Integer l = h.lk(id(d), id(i));
      if (l == 1 || l == -1) {
        out.push_back(MoveStep::cancel(id(d), id(i)));
        bool other = false;
        for (std::size_t e : dots)
          if (e != d && h.lk(id(e), id(i)) != 0) other = true;
        if (*h.components[i].framing == 0 && !other) out.push_back(MoveStep::twist(id(d), id(i)));
      }
    }
  }
  return out;
}

// A random script of `steps` moves, each valid on the state it is applied to.
// Moves that would leave the 3-handles without null classes are skipped.
inline MoveScript random_script(Rng& rng, HandleDecomposition h, std::size_t steps) {
  MoveScript s;
  int guard = 0;
  while (s.steps.size() < steps && guard++ < 10000) {
    const auto moves = applicable_moves(h);
    MoveStep step = moves[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(moves.size()) - 1))];
    // Keep slides over large framings rare enough that entries stay readable.
    try {
      HandleDecomposition next = apply(h, step);
      (void)snapshot(next);
      if (step.kind == MoveKind::blow_up || step.kind == MoveKind::add_pair) {
        // record the generated id so replay reproduces the same names
        const Component& added = next.components.back();
        step.first = added.id;
      }
      s.steps.push_back(step);
      h = std::move(next);
    } catch (const InputError&) {
    }
  }
  return s;
}

// Invariant factors via determinantal divisors: d_k = gcd of k x k minors.
inline std::vector<Integer> determinantal_invariant_factors(const IntegerMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<Integer> divisors{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      std::vector<std::size_t> ri;
      for (std::size_t i = 0; i < r; ++i)
        if (rsel[i]) ri.push_back(i);
      do {
        std::vector<std::size_t> ci;
        for (std::size_t j = 0; j < c; ++j)
          if (csel[j]) ci.push_back(j);
        g = boost::multiprecision::gcd(g, abs(determinant(m.select(ri, ci))));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

// Plain elementary-operations reduction: Euclid on the leading row and column,
// no pivot selection, then a divisibility fix-up pass. Returns the diagonal.
inline std::vector<Integer> elementary_invariant_factors(IntegerMatrix a) {
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // Bring some nonzero entry to (t, t).
    bool found = false;
    for (std::size_t i = t; i < r && !found; ++i)
      for (std::size_t j = t; j < c && !found; ++j)
        if (a(i, j) != 0) {
          a.swap_rows(t, i);
          a.swap_cols(t, j);
          found = true;
        }
    if (!found) break;
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t i = t + 1; i < r; ++i)
        while (a(i, t) != 0) {
          a.add_row_multiple(i, t, -(a(i, t) / a(t, t)));
          if (a(i, t) != 0) a.swap_rows(t, i);
        }
      for (std::size_t j = t + 1; j < c; ++j)
        while (a(t, j) != 0) {
          a.add_col_multiple(j, t, -(a(t, j) / a(t, t)));
          if (a(t, j) != 0) {
            a.swap_cols(t, j);
            dirty = true;
          }
        }
      for (std::size_t i = t + 1; i < r; ++i)
        if (a(i, t) != 0) dirty = true;
    }
    diag.push_back(abs(a(t, t)));
  }
  // d_i | d_{i+1}: replace (a, b) by (gcd, lcm) until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        const Integer g = boost::multiprecision::gcd(diag[i], diag[j]);
        if (g != diag[i]) {
          const Integer l = diag[i] / g * diag[j];
          diag[i] = g;
          diag[j] = l;
          changed = true;
        }
      }
  }
  return diag;
}

inline std::vector<Integer> nontrivial(const std::vector<Integer>& factors) {
  std::vector<Integer> out;
  for (const auto& f : factors)
    if (f != 1) out.push_back(f);
  return out;
}

}  // namespace kirby::testing
