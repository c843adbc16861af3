#pragma once

// Kirby moves and cork twists as transformations of HandleDecomposition, and
// a replay engine that keeps a ledger of the invariants each move must keep.
//
// Every slide is the congruence L' = E^t L E on the full linking matrix with
// E = I + k * e_{j,i}; dotted circles contribute a framing-0 row.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kirby/algebra.hpp"
#include "kirby/errors.hpp"
#include "kirby/handlebody.hpp"

namespace kirby {

enum class MoveKind { blow_up, blow_down, slide, cancel, swap, twist, add_pair, drop_pair };

struct MoveStep {
  MoveKind kind = MoveKind::slide;
  std::string first;   // handle acted on (slide: moving handle; cancel/twist: dotted)
  std::string second;  // slide: handle slid over; cancel/twist: 2-handle partner
  int sign = 1;        // slide direction, blow-up sign

  static MoveStep blow_up(int sign, std::string id = {}) {
    return {MoveKind::blow_up, std::move(id), {}, sign};
  }
  static MoveStep blow_down(std::string id) { return {MoveKind::blow_down, std::move(id), {}, 1}; }
  static MoveStep slide(std::string moving, std::string over, int sign) {
    return {MoveKind::slide, std::move(moving), std::move(over), sign};
  }
  static MoveStep cancel(std::string dotted, std::string handle) {
    return {MoveKind::cancel, std::move(dotted), std::move(handle), 1};
  }
  static MoveStep swap(std::string id) { return {MoveKind::swap, std::move(id), {}, 1}; }
  static MoveStep twist(std::string dotted, std::string partner) {
    return {MoveKind::twist, std::move(dotted), std::move(partner), 1};
  }
  static MoveStep add_pair(std::string id = {}) { return {MoveKind::add_pair, std::move(id), {}, 1}; }
  static MoveStep drop_pair(std::string id) { return {MoveKind::drop_pair, std::move(id), {}, 1}; }

  friend bool operator==(const MoveStep&, const MoveStep&) = default;
};

struct MoveScript {
  std::vector<MoveStep> steps;

  friend bool operator==(const MoveScript&, const MoveScript&) = default;
};

inline MoveScript operator+(MoveScript a, const MoveScript& b) {
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
  return a;
}

// ---------------------------------------------------------------------------
// Text form, one step per line:
//   blow_up + [id] | blow_up - [id] | blow_down ID | slide I over J +|-
//   cancel D H | swap ID | twist D H | add_pair [id] | drop_pair ID

inline std::string to_string(const MoveStep& s) {
  const char* sg = s.sign > 0 ? "+" : "-";
  switch (s.kind) {
    case MoveKind::blow_up: return std::string("blow_up ") + sg + (s.first.empty() ? "" : " " + s.first);
    case MoveKind::blow_down: return "blow_down " + s.first;
    case MoveKind::slide: return "slide " + s.first + " over " + s.second + " " + sg;
    case MoveKind::cancel: return "cancel " + s.first + " " + s.second;
    case MoveKind::swap: return "swap " + s.first;
    case MoveKind::twist: return "twist " + s.first + " " + s.second;
    case MoveKind::add_pair: return "add_pair" + (s.first.empty() ? "" : " " + s.first);
    case MoveKind::drop_pair: return "drop_pair " + s.first;
  }
  return {};
}

class MoveSyntaxError : public InputError {
 public:
  MoveSyntaxError(std::size_t column, const std::string& what)
      : InputError("column " + std::to_string(column) + ": " + what), column_(column), message_(what) {}
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t column_;
  std::string message_;
};

// Parses one script line. Errors carry the 1-based column of the offending token.
inline MoveStep parse_move(const std::string& line) {
  std::vector<std::pair<std::string, std::size_t>> tok;
  for (std::size_t i = 0; i < line.size();) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    tok.emplace_back(line.substr(i, j - i), i + 1);
    i = j;
  }
  auto fail = [&](std::size_t idx, const std::string& what) -> MoveStep {
    const std::size_t col = idx < tok.size() ? tok[idx].second : line.size() + 1;
    throw MoveSyntaxError(col, what);
  };
  if (tok.empty()) return fail(0, "empty move");
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (tok.size() < lo) fail(tok.size(), "missing argument to '" + tok[0].first + "'");
    if (tok.size() > hi) fail(hi, "unexpected token '" + tok[hi].first + "'");
  };
  auto sign_at = [&](std::size_t idx) {
    if (tok[idx].first == "+") return 1;
    if (tok[idx].first == "-") return -1;
    fail(idx, "expected '+' or '-', got '" + tok[idx].first + "'");
    return 0;
  };
  const std::string& op = tok[0].first;
  if (op == "blow_up") {
    arity(2, 3);
    return MoveStep::blow_up(sign_at(1), tok.size() > 2 ? tok[2].first : std::string{});
  }
  if (op == "blow_down") {
    arity(2, 2);
    return MoveStep::blow_down(tok[1].first);
  }
  if (op == "slide") {
    arity(5, 5);
    if (tok[2].first != "over") fail(2, "expected 'over'");
    return MoveStep::slide(tok[1].first, tok[3].first, sign_at(4));
  }
  if (op == "cancel") {
    arity(3, 3);
    return MoveStep::cancel(tok[1].first, tok[2].first);
  }
  if (op == "swap") {
    arity(2, 2);
    return MoveStep::swap(tok[1].first);
  }
  if (op == "twist") {
    arity(3, 3);
    return MoveStep::twist(tok[1].first, tok[2].first);
  }
  if (op == "add_pair") {
    arity(1, 2);
    return MoveStep::add_pair(tok.size() > 1 ? tok[1].first : std::string{});
  }
  if (op == "drop_pair") {
    arity(2, 2);
    return MoveStep::drop_pair(tok[1].first);
  }
  return fail(0, "unknown move '" + op + "'");
}

// ---------------------------------------------------------------------------
// Moves

namespace detail {

inline Integer self_entry(const HandleDecomposition& h, const Component& c) {
  (void)h;
  return c.is_dotted() ? Integer(0) : *c.framing;
}

// Handle i becomes i + k * j.
inline void slide_multiple(HandleDecomposition& h, const std::string& i, const std::string& j,
                           const Integer& k) {
  const Component& cj = h.component(j);
  const Integer ljj = self_entry(h, cj);
  const Integer lij = h.lk(i, j);
  Component& ci = h.component(i);
  ci.framing = *ci.framing + 2 * k * lij + k * k * ljj;
  for (const Component& other : h.components) {
    if (other.id == i) continue;
    const Integer ljo = other.id == j ? ljj : h.lk(j, other.id);
    h.set_lk(i, other.id, h.lk(i, other.id) + k * ljo);
  }
  ci.attaching_grid.reset();
  ci.seifert_genus.reset();
}

inline const Component& two_handle(const HandleDecomposition& h, const std::string& id) {
  const Component& c = h.component(id);
  if (c.is_dotted()) throw InputError("'" + id + "' is a dotted circle, not a 2-handle");
  return c;
}

inline const Component& dotted(const HandleDecomposition& h, const std::string& id) {
  const Component& c = h.component(id);
  if (!c.is_dotted()) throw InputError("'" + id + "' is not a dotted circle");
  return c;
}

inline void remove_handle(HandleDecomposition& h, const std::string& id) {
  h.remove_component(id);
  for (auto* pair : {&h.metadata.cork, &h.metadata.plug})
    if (*pair && ((*pair)->first == id || (*pair)->second == id)) pair->reset();
}

inline bool links_dotted(const HandleDecomposition& h, const std::string& id,
                         const std::string& except = {}) {
  for (const Component& c : h.components)
    if (c.is_dotted() && c.id != id && c.id != except && h.lk(id, c.id) != 0) return true;
  return false;
}

}  // namespace detail

// sign > 0 adds a +1-framed unknot (CP^2), sign < 0 a -1-framed one.
inline HandleDecomposition blow_up(HandleDecomposition h, int sign, std::string id = {}) {
  require_valid(h);
  if (id.empty()) id = h.fresh_id("e");
  Component c = Component::framed(std::move(id), sign > 0 ? 1 : -1);
  c.attaching_grid = unknot_grid();
  c.seifert_genus = 0;
  h.add_component(std::move(c));
  return h;
}

inline HandleDecomposition blow_down(HandleDecomposition h, const std::string& id) {
  require_valid(h);
  const Component& c = detail::two_handle(h, id);
  const Integer f = *c.framing;
  if (f != 1 && f != -1) throw InputError("blow-down needs a +-1-framed 2-handle; '" + id + "' has framing " + f.str());
  if (detail::links_dotted(h, id)) throw InputError("'" + id + "' links a dotted circle; cannot blow down");
  std::vector<std::string> others;
  for (const Component& o : h.components)
    if (!o.is_dotted() && o.id != id) others.push_back(o.id);
  for (const auto& x : others) {
    const Integer l = h.lk(x, id);
    if (l != 0) detail::slide_multiple(h, x, id, -l * f);
  }
  detail::remove_handle(h, id);
  return h;
}

inline HandleDecomposition slide(HandleDecomposition h, const std::string& moving,
                                 const std::string& over, int sign) {
  require_valid(h);
  if (moving == over) throw InputError("cannot slide '" + moving + "' over itself");
  detail::two_handle(h, moving);
  h.component(over);
  if (sign != 1 && sign != -1) throw InputError("slide sign must be +1 or -1");
  detail::slide_multiple(h, moving, over, sign);
  return h;
}

// Cancels a 1-handle/2-handle pair: other 2-handles are first slid off the
// dotted circle over the partner, then both are removed.
inline HandleDecomposition cancel(HandleDecomposition h, const std::string& dotted_id,
                                  const std::string& handle_id) {
  require_valid(h);
  detail::dotted(h, dotted_id);
  detail::two_handle(h, handle_id);
  const Integer eps = h.lk(dotted_id, handle_id);
  if (eps != 1 && eps != -1)
    throw InputError("cancellation needs linking +-1 between '" + dotted_id + "' and '" + handle_id +
                     "', got " + eps.str());
  std::vector<std::string> others;
  for (const Component& o : h.components)
    if (!o.is_dotted() && o.id != handle_id) others.push_back(o.id);
  for (const auto& x : others) {
    const Integer c = h.lk(x, dotted_id);
    if (c != 0) detail::slide_multiple(h, x, handle_id, -c * eps);
  }
  detail::remove_handle(h, handle_id);
  detail::remove_handle(h, dotted_id);
  return h;
}

// Dot <-> 0-framing exchange. Leaves the boundary presentation untouched.
inline HandleDecomposition dot_zero_swap(HandleDecomposition h, const std::string& id) {
  require_valid(h);
  Component& c = h.component(id);
  if (c.is_dotted()) {
    c.kind = ComponentKind::two_handle;
    c.framing = Integer(0);
    return h;
  }
  if (*c.framing != 0)
    throw InputError("only a 0-framed 2-handle can become a dotted circle; '" + id +
                     "' has framing " + c.framing->str());
  if (detail::links_dotted(h, id))
    throw InputError("'" + id + "' links a dotted circle; swapping would link two 1-handles");
  c.kind = ComponentKind::dotted;
  c.framing.reset();
  return h;
}

// Composite swap on a dotted circle and its 0-framed partner with linking +-1.
inline HandleDecomposition twist(HandleDecomposition h, const std::string& dotted_id,
                                 const std::string& partner_id) {
  require_valid(h);
  detail::dotted(h, dotted_id);
  const Component& p = detail::two_handle(h, partner_id);
  if (*p.framing != 0) throw InputError("twist partner '" + partner_id + "' must be 0-framed");
  const Integer l = h.lk(dotted_id, partner_id);
  if (l != 1 && l != -1) throw InputError("twist needs linking +-1, got " + l.str());
  if (detail::links_dotted(h, partner_id, dotted_id))
    throw InputError("twist partner '" + partner_id + "' links another dotted circle");
  h = dot_zero_swap(std::move(h), dotted_id);
  return dot_zero_swap(std::move(h), partner_id);
}

// 2-handle/3-handle pair: a 0-framed unlinked unknot together with a 3-handle.
inline HandleDecomposition add_pair(HandleDecomposition h, std::string id = {}) {
  require_valid(h);
  if (id.empty()) id = h.fresh_id("z");
  Component c = Component::framed(std::move(id), 0);
  c.attaching_grid = unknot_grid();
  c.seifert_genus = 0;
  h.add_component(std::move(c));
  ++h.three_handles;
  return h;
}

inline HandleDecomposition drop_pair(HandleDecomposition h, const std::string& id) {
  require_valid(h);
  const Component& c = detail::two_handle(h, id);
  if (*c.framing != 0) throw InputError("'" + id + "' is not 0-framed");
  if (h.three_handles == 0) throw InputError("no 3-handle left to cancel");
  for (const Component& o : h.components)
    if (o.id != id && h.lk(id, o.id) != 0)
      throw InputError("'" + id + "' is linked with '" + o.id + "'");
  detail::remove_handle(h, id);
  --h.three_handles;
  return h;
}

inline HandleDecomposition apply(HandleDecomposition h, const MoveStep& s) {
  switch (s.kind) {
    case MoveKind::blow_up: return blow_up(std::move(h), s.sign, s.first);
    case MoveKind::blow_down: return blow_down(std::move(h), s.first);
    case MoveKind::slide: return slide(std::move(h), s.first, s.second, s.sign);
    case MoveKind::cancel: return cancel(std::move(h), s.first, s.second);
    case MoveKind::swap: return dot_zero_swap(std::move(h), s.first);
    case MoveKind::twist: return twist(std::move(h), s.first, s.second);
    case MoveKind::add_pair: return add_pair(std::move(h), s.first);
    case MoveKind::drop_pair: return drop_pair(std::move(h), s.first);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Ledger

struct LedgerSnapshot {
  long euler = 0;
  FormInvariants form;  // of the form on H_2, torsion in H_1 or not
  AbelianGroup boundary_h1;

  friend bool operator==(const LedgerSnapshot&, const LedgerSnapshot&) = default;
};

inline LedgerSnapshot snapshot(const HandleDecomposition& h) {
  return {euler_characteristic(h), form_invariants(restricted_form(h).form),
          cokernel(boundary_presentation(h))};
}

struct LedgerCheck {
  std::string quantity;
  std::string expected;
  std::string actual;
  bool held = true;
};

struct LedgerEntry {
  std::size_t step = 0;
  MoveStep move;
  LedgerSnapshot after;
  std::vector<LedgerCheck> checks;
};

struct ReplayResult {
  HandleDecomposition result;
  std::vector<LedgerEntry> ledger;
};

class ReplayViolation : public InvariantViolation {
 public:
  explicit ReplayViolation(LedgerEntry entry)
      : InvariantViolation(describe(entry)), entry_(std::move(entry)) {}
  const LedgerEntry& entry() const noexcept { return entry_; }

 private:
  static std::string describe(const LedgerEntry& e) {
    std::string s = "step " + std::to_string(e.step) + " (" + to_string(e.move) + ") changed";
    for (const auto& c : e.checks)
      if (!c.held) s += " " + c.quantity + " [expected " + c.expected + ", got " + c.actual + "]";
    return s;
  }
  LedgerEntry entry_;
};

namespace detail {

inline std::vector<LedgerCheck> expectations(const MoveStep& s, const LedgerSnapshot& before,
                                             const LedgerSnapshot& after) {
  std::vector<LedgerCheck> out;
  auto expect = [&](std::string q, const auto& want, const auto& got, auto fmt) {
    out.push_back({std::move(q), fmt(want), fmt(got), want == got});
  };
  auto num = [](const auto& v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  auto grp = [](const AbelianGroup& g) { return g.to_string(); };
  auto par = [](Parity p) { return std::string(to_string(p)); };

  expect("boundary_h1", before.boundary_h1, after.boundary_h1, grp);
  switch (s.kind) {
    case MoveKind::slide:
    case MoveKind::cancel:
    case MoveKind::twist:
    case MoveKind::add_pair:
    case MoveKind::drop_pair:
      expect("euler", before.euler, after.euler, num);
      expect("rank", before.form.rank, after.form.rank, num);
      expect("signature", before.form.signature, after.form.signature, num);
      expect("parity", before.form.parity, after.form.parity, par);
      expect("det_abs", before.form.det_abs, after.form.det_abs, num);
      break;
    case MoveKind::blow_up:
      expect("euler", before.euler + 1, after.euler, num);
      expect("rank", before.form.rank + 1, after.form.rank, num);
      expect("signature", before.form.signature + (s.sign > 0 ? 1 : -1), after.form.signature, num);
      expect("parity", Parity::odd, after.form.parity, par);
      expect("det_abs", before.form.det_abs, after.form.det_abs, num);
      break;
    case MoveKind::blow_down:
      expect("euler", before.euler - 1, after.euler, num);
      expect("rank", before.form.rank - 1, after.form.rank, num);
      expect("det_abs", before.form.det_abs, after.form.det_abs, num);
      break;
    case MoveKind::swap:
      break;  // the interior may change; only the boundary is kept
  }
  return out;
}

}  // namespace detail

// Applies the steps in order. Precondition failures raise ReplayError with the
// step index; an unexpected invariant change raises ReplayViolation.
inline ReplayResult replay(HandleDecomposition h, const MoveScript& script) {
  ReplayResult r;
  LedgerSnapshot before = snapshot(h);
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    MoveStep step = script.steps[i];
    LedgerSnapshot after;
    try {
      if (step.kind == MoveKind::blow_down) {
        const Integer f = *detail::two_handle(h, step.first).framing;
        step.sign = f > 0 ? 1 : -1;
      }
      h = apply(std::move(h), step);
      after = snapshot(h);
    } catch (const InputError& e) {
      throw ReplayError(i, e.what());
    }
    LedgerEntry entry{i, script.steps[i], std::move(after), {}};
    entry.checks = detail::expectations(step, before, entry.after);
    for (const auto& c : entry.checks)
      if (!c.held) throw ReplayViolation(entry);
    before = entry.after;
    r.ledger.push_back(std::move(entry));
  }
  r.result = std::move(h);
  return r;
}

}  // namespace kirby
