#pragma once

// Eliashberg's criterion at the level of witness grids: a 2-handle attached
// along a Legendrian knot passes when its framing is at most tb - 1.

#include <optional>
#include <string>
#include <vector>

#include "kirby/grid.hpp"
#include "kirby/handlebody.hpp"

namespace kirby {

enum class SteinVerdict { pass, fail, unchecked };

inline const char* to_string(SteinVerdict v) {
  switch (v) {
    case SteinVerdict::pass: return "pass";
    case SteinVerdict::fail: return "fail";
    case SteinVerdict::unchecked: return "unchecked";
  }
  return "?";
}

struct HandleSteinVerdict {
  std::string id;
  Integer framing;
  std::optional<long> tb;
  SteinVerdict verdict = SteinVerdict::unchecked;
};

struct SteinReport {
  std::vector<HandleSteinVerdict> handles;
  bool overall = true;  // every 2-handle checked and passing
};

inline SteinReport stein_check(const HandleDecomposition& h) {
  require_valid(h);
  SteinReport r;
  for (const Component& c : h.components) {
    if (c.is_dotted()) continue;
    HandleSteinVerdict v{c.id, *c.framing, std::nullopt, SteinVerdict::unchecked};
    if (c.attaching_grid) {
      v.tb = grid_invariants(*c.attaching_grid).tb;
      v.verdict = *c.framing <= *v.tb - 1 ? SteinVerdict::pass : SteinVerdict::fail;
    }
    if (v.verdict != SteinVerdict::pass) r.overall = false;
    r.handles.push_back(std::move(v));
  }
  return r;
}

}  // namespace kirby
