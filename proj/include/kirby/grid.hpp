#pragma once

// Grid diagrams as combinatorial Legendrian fronts.
//
// Conventions (fixed, and pinned by the unknot/trefoil tests):
//   * column c carries one X at row x[c] and one O at row o[c];
//   * vertical segments run O -> X, horizontal segments run X -> O;
//   * vertical strands cross over horizontal ones;
//   * the front is the grid rotated 45 degrees counterclockwise, so the NW
//     and SE corners become cusps and tb = writhe - cusps / 2.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kirby/errors.hpp"

namespace kirby {

class GridDiagram {
 public:
  GridDiagram() = default;
  GridDiagram(std::vector<int> x_positions, std::vector<int> o_positions)
      : x_(std::move(x_positions)), o_(std::move(o_positions)) {
    const std::size_t n = x_.size();
    if (n < 2) throw InputError("grid size must be at least 2");
    if (o_.size() != n) throw InputError("X and O rows must have the same length");
    if (!is_permutation(x_)) throw InputError("X positions are not a permutation");
    if (!is_permutation(o_)) throw InputError("O positions are not a permutation");
    for (std::size_t c = 0; c < n; ++c)
      if (x_[c] == o_[c])
        throw InputError("X and O share a cell in column " + std::to_string(c));
    x_inv_ = inverse(x_);
    o_inv_ = inverse(o_);
  }

  std::size_t size() const noexcept { return x_.size(); }
  const std::vector<int>& x_positions() const noexcept { return x_; }
  const std::vector<int>& o_positions() const noexcept { return o_; }
  int x_column_in_row(int r) const { return x_inv_[static_cast<std::size_t>(r)]; }
  int o_column_in_row(int r) const { return o_inv_[static_cast<std::size_t>(r)]; }

  // Number of link components: cycles of c -> (column of the O in row x[c]).
  std::size_t component_count() const {
    std::vector<bool> seen(size(), false);
    std::size_t count = 0;
    for (std::size_t start = 0; start < size(); ++start) {
      if (seen[start]) continue;
      ++count;
      for (std::size_t c = start; !seen[c];
           c = static_cast<std::size_t>(o_inv_[static_cast<std::size_t>(x_[c])]))
        seen[c] = true;
    }
    return count;
  }

  friend bool operator==(const GridDiagram& a, const GridDiagram& b) {
    return a.x_ == b.x_ && a.o_ == b.o_;
  }

 private:
  static bool is_permutation(const std::vector<int>& p) {
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
      if (v < 0 || static_cast<std::size_t>(v) >= p.size() || hit[static_cast<std::size_t>(v)])
        return false;
      hit[static_cast<std::size_t>(v)] = true;
    }
    return true;
  }
  static std::vector<int> inverse(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return inv;
  }

  std::vector<int> x_, o_, x_inv_, o_inv_;
};

struct LegendrianInvariants {
  long tb = 0;
  long rot = 0;
  long writhe = 0;
  long cusp_count = 0;

  friend bool operator==(const LegendrianInvariants&, const LegendrianInvariants&) = default;
};

inline long grid_writhe(const GridDiagram& g) {
  const int n = static_cast<int>(g.size());
  long w = 0;
  for (int c = 0; c < n; ++c) {
    const int xr = g.x_positions()[static_cast<std::size_t>(c)];
    const int orow = g.o_positions()[static_cast<std::size_t>(c)];
    const int lo = std::min(xr, orow), hi = std::max(xr, orow);
    const int v = xr > orow ? 1 : -1;
    for (int r = lo + 1; r < hi; ++r) {
      const int xc = g.x_column_in_row(r), oc = g.o_column_in_row(r);
      if (std::min(xc, oc) < c && c < std::max(xc, oc)) {
        const int h = oc > xc ? 1 : -1;
        w += -v * h;
      }
    }
  }
  return w;
}

inline LegendrianInvariants grid_invariants(const GridDiagram& g) {
  if (g.component_count() != 1)
    throw InputError("grid invariants need a knot; grid has " +
                     std::to_string(g.component_count()) + " components");
  long nw_x = 0, nw_o = 0, se_x = 0, se_o = 0;
  const int n = static_cast<int>(g.size());
  for (int c = 0; c < n; ++c) {
    const int xr = g.x_positions()[static_cast<std::size_t>(c)];
    const int orow = g.o_positions()[static_cast<std::size_t>(c)];
    {
      const bool down = orow < xr;
      const bool left = g.o_column_in_row(xr) < c;
      if (down && !left) ++nw_x;
      if (!down && left) ++se_x;
    }
    {
      const bool down = xr < orow;
      const bool left = g.x_column_in_row(orow) < c;
      if (down && !left) ++nw_o;
      if (!down && left) ++se_o;
    }
  }
  LegendrianInvariants inv;
  inv.writhe = grid_writhe(g);
  inv.cusp_count = nw_x + nw_o + se_x + se_o;
  inv.tb = inv.writhe - inv.cusp_count / 2;
  // Down cusps: NW corners entered horizontally (O markings) and SE corners
  // entered vertically (X markings).
  inv.rot = (nw_o + se_x - nw_x - se_o) / 2;
  return inv;
}

// Flip rows top to bottom. With a fixed crossing rule this is the mirror knot.
inline GridDiagram reflect(const GridDiagram& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> x(g.size()), o(g.size());
  for (std::size_t c = 0; c < g.size(); ++c) {
    x[c] = n - 1 - g.x_positions()[c];
    o[c] = n - 1 - g.o_positions()[c];
  }
  return GridDiagram(std::move(x), std::move(o));
}

// Cyclic shift on the torus: columns by dc, rows by dr.
inline GridDiagram translate(const GridDiagram& g, int dc, int dr) {
  const int n = static_cast<int>(g.size());
  auto mod = [n](int v) { return ((v % n) + n) % n; };
  std::vector<int> x(g.size()), o(g.size());
  for (int c = 0; c < n; ++c) {
    x[static_cast<std::size_t>(mod(c + dc))] = mod(g.x_positions()[static_cast<std::size_t>(c)] + dr);
    o[static_cast<std::size_t>(mod(c + dc))] = mod(g.o_positions()[static_cast<std::size_t>(c)] + dr);
  }
  return GridDiagram(std::move(x), std::move(o));
}

// Positive (p, q) torus knot at maximal Thurston-Bennequin number pq - p - q.
// O markings on the diagonal, X markings shifted by q; if that lands on the
// mirror, the rows are flipped.
inline GridDiagram torus_knot_grid(int p, int q) {
  if (q < 1 || p <= q) throw InputError("torus knot grid needs p > q >= 1");
  if (std::gcd(p, q) != 1) throw InputError("torus knot parameters must be coprime");
  const int n = p + q;
  std::vector<int> x(static_cast<std::size_t>(n)), o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    o[static_cast<std::size_t>(c)] = c;
    x[static_cast<std::size_t>(c)] = (c + q) % n;
  }
  GridDiagram g(std::move(x), std::move(o));
  if (grid_invariants(g).tb != static_cast<long>(p) * q - p - q) g = reflect(g);
  if (grid_invariants(g).tb != static_cast<long>(p) * q - p - q)
    throw InvariantViolation("torus knot grid does not realize maximal tb");
  return g;
}

inline GridDiagram unknot_grid() { return GridDiagram({1, 0}, {0, 1}); }

enum class StabilizationSign { positive, negative };

namespace detail {

// Replace the X in column `col` by a 2x2 block. (left_keeps, bottom_keeps)
// choose which of the two new columns / rows keeps the old O marking, and
// so which corner of the block stays empty.
inline GridDiagram x_stabilization(const GridDiagram& g, int col, bool left_keeps,
                                   bool bottom_keeps) {
  const int n = static_cast<int>(g.size());
  const int row = g.x_positions()[static_cast<std::size_t>(col)];
  auto shift_row = [row](int r) { return r > row ? r + 1 : r; };
  std::vector<int> x(static_cast<std::size_t>(n + 1)), o(static_cast<std::size_t>(n + 1));
  for (int c = 0; c < n; ++c) {
    const int nc = c > col ? c + 1 : c;
    if (c == col) continue;
    x[static_cast<std::size_t>(nc)] = shift_row(g.x_positions()[static_cast<std::size_t>(c)]);
    o[static_cast<std::size_t>(nc)] = shift_row(g.o_positions()[static_cast<std::size_t>(c)]);
  }
  const int old_o_row = shift_row(g.o_positions()[static_cast<std::size_t>(col)]);
  const int ca = left_keeps ? col : col + 1, cb = left_keeps ? col + 1 : col;
  const int ra = bottom_keeps ? row : row + 1, rb = bottom_keeps ? row + 1 : row;
  // Row `ra` keeps the old O of that row, which lives in another column; the
  // old O rows above `row` were shifted, so fix the one that sat on `row`.
  const int o_col_in_row = g.o_column_in_row(row);
  const int o_col_new = o_col_in_row > col ? o_col_in_row + 1 : o_col_in_row;
  o[static_cast<std::size_t>(o_col_new)] = ra;
  o[static_cast<std::size_t>(ca)] = old_o_row;
  x[static_cast<std::size_t>(ca)] = rb;
  x[static_cast<std::size_t>(cb)] = ra;
  o[static_cast<std::size_t>(cb)] = rb;
  return GridDiagram(std::move(x), std::move(o));
}

}  // namespace detail

// Legendrian stabilization at the X marking of column 0.
// tb drops by one; rot moves by +1 (positive) or -1 (negative).
inline GridDiagram stabilize(const GridDiagram& g, StabilizationSign sign) {
  return sign == StabilizationSign::positive ? detail::x_stabilization(g, 0, false, true)
                                             : detail::x_stabilization(g, 0, true, false);
}

// `grid n` / `X: ...` / `O: ...`
inline std::string serialize(const GridDiagram& g) {
  std::ostringstream os;
  os << "grid " << g.size() << "\nX:";
  for (int v : g.x_positions()) os << ' ' << v;
  os << "\nO:";
  for (int v : g.o_positions()) os << ' ' << v;
  return os.str();
}

// Row 0 at the bottom.
inline std::string render_ascii(const GridDiagram& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::string> canvas(static_cast<std::size_t>(n), std::string(static_cast<std::size_t>(2 * n - 1), ' '));
  for (int r = 0; r < n; ++r) {
    const int a = g.x_column_in_row(r), b = g.o_column_in_row(r);
    for (int c = std::min(a, b) * 2; c <= std::max(a, b) * 2; ++c)
      canvas[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = '-';
  }
  for (int c = 0; c < n; ++c) {
    const int a = g.x_positions()[static_cast<std::size_t>(c)], b = g.o_positions()[static_cast<std::size_t>(c)];
    for (int r = std::min(a, b); r <= std::max(a, b); ++r)
      canvas[static_cast<std::size_t>(r)][static_cast<std::size_t>(2 * c)] = '|';
    canvas[static_cast<std::size_t>(a)][static_cast<std::size_t>(2 * c)] = 'X';
    canvas[static_cast<std::size_t>(b)][static_cast<std::size_t>(2 * c)] = 'O';
  }
  std::string out;
  for (int r = n - 1; r >= 0; --r) {
    auto line = canvas[static_cast<std::size_t>(r)];
    line.erase(line.find_last_not_of(' ') + 1);
    out += line + '\n';
  }
  return out;
}

}  // namespace kirby
