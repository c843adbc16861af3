#pragma once

// Homeomorphism-level comparison of two decompositions: homology, boundary
// homology and the intersection form. Never claims a homeomorphism outright.

#include <string>

#include "kirby/algebra.hpp"
#include "kirby/handlebody.hpp"

namespace kirby {

enum class CompareVerdict { distinguished, consistent, unknown };

inline const char* to_string(CompareVerdict v) {
  switch (v) {
    case CompareVerdict::distinguished: return "distinguished";
    case CompareVerdict::consistent: return "consistent-with-homeomorphic (Boyer-level invariants agree)";
    case CompareVerdict::unknown: return "unknown";
  }
  return "?";
}

struct Comparison {
  InvariantReport left, right;
  std::optional<EquivalenceResult> forms;
  CompareVerdict verdict = CompareVerdict::unknown;
  std::string reason;
};

inline Comparison compare(const HandleDecomposition& a, const HandleDecomposition& b, int search_bound = 3) {
  Comparison c;
  c.left = invariant_report(a);
  c.right = invariant_report(b);
  auto distinguished = [&](std::string why) {
    c.verdict = CompareVerdict::distinguished;
    c.reason = std::move(why);
    return c;
  };
  if (c.left.h1 != c.right.h1)
    return distinguished("H_1 differs: " + c.left.h1.to_string() + " vs " + c.right.h1.to_string());
  if (c.left.h2_rank != c.right.h2_rank)
    return distinguished("rank H_2 differs: " + std::to_string(c.left.h2_rank) + " vs " +
                         std::to_string(c.right.h2_rank));
  if (c.left.boundary_h1 != c.right.boundary_h1)
    return distinguished("boundary H_1 differs: " + c.left.boundary_h1.to_string() + " vs " +
                         c.right.boundary_h1.to_string());
  if (!c.left.intersection_form || !c.right.intersection_form) {
    c.reason = "H_1 has torsion; intersection forms not compared";
    return c;
  }
  c.forms = forms_equivalent(*c.left.intersection_form, *c.right.intersection_form, search_bound);
  switch (c.forms->verdict) {
    case Equivalence::distinct: return distinguished("intersection forms differ: " + c.forms->reason);
    case Equivalence::unknown:
      c.reason = "form equivalence undecided within the search bound: " + c.forms->reason;
      return c;
    case Equivalence::equivalent: break;
  }
  if (!c.left.h1.is_trivial() || !a.metadata.asserted_simply_connected || !b.metadata.asserted_simply_connected) {
    c.reason = "invariants agree but simple connectivity is not asserted on both sides";
    return c;
  }
  c.verdict = CompareVerdict::consistent;
  c.reason = "homology, boundary homology and intersection forms agree";
  return c;
}

}  // namespace kirby
