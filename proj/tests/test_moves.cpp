#include <gtest/gtest.h>

#include "support.hpp"

using namespace kirby;
using kirby::testing::Rng;

namespace {

HandleDecomposition two_handles(long a, long b, long l) {
  HandleDecomposition h;
  h.add_component(Component::framed("a", a));
  h.add_component(Component::framed("b", b));
  h.set_lk("a", "b", l);
  return h;
}

}  // namespace

TEST(Moves, SlideIsCongruence) {
  const auto h = slide(two_handles(2, 3, 1), "a", "b", 1);
  EXPECT_EQ(*h.component("a").framing, 2 + 2 * 1 + 3);
  EXPECT_EQ(h.lk("a", "b"), 1 + 3);
  const auto back = slide(h, "a", "b", -1);
  EXPECT_EQ(linking_matrix(back), linking_matrix(two_handles(2, 3, 1)));
}

TEST(Moves, SlideOverDottedCircle) {
  HandleDecomposition h;
  h.add_component(Component::dotted("d"));
  h.add_component(Component::framed("k", 1));
  h.add_component(Component::framed("j", 0));
  h.set_lk("d", "k", 1);
  h.set_lk("d", "j", 1);
  const auto s = slide(h, "j", "d", -1);
  EXPECT_EQ(s.lk("j", "k"), 0 - 1);
  EXPECT_EQ(*s.component("j").framing, 0 - 2);
  EXPECT_EQ(invariant_report(s).boundary_h1, invariant_report(h).boundary_h1);
}

TEST(Moves, SlidePreconditions) {
  HandleDecomposition h = two_handles(1, 1, 0);
  h.add_component(Component::dotted("d"));
  EXPECT_THROW(slide(h, "a", "a", 1), InputError);
  EXPECT_THROW(slide(h, "d", "a", 1), InputError);
  EXPECT_THROW(slide(h, "a", "zz", 1), InputError);
}

TEST(Moves, BlowUpAndDown) {
  const auto h = two_handles(2, 3, 1);
  const auto up = blow_up(h, -1);
  EXPECT_EQ(up.components.back().id, "e1");
  EXPECT_EQ(*up.components.back().framing, -1);
  const auto linked = slide(up, "a", "e1", 1);
  EXPECT_EQ(*linked.component("a").framing, 2 - 1);
  const auto down = blow_down(linked, "e1");
  EXPECT_EQ(linking_matrix(down), linking_matrix(h));
  EXPECT_THROW(blow_down(h, "a"), InputError);
}

TEST(Moves, CancelPair) {
  HandleDecomposition h;
  h.add_component(Component::dotted("d"));
  h.add_component(Component::framed("h", 4));
  h.add_component(Component::framed("k", 1));
  h.set_lk("d", "h", -1);
  h.set_lk("d", "k", 2);
  h.set_lk("h", "k", 1);
  const auto before = snapshot(h);
  const auto c = cancel(h, "d", "h");
  EXPECT_EQ(c.components.size(), 1u);
  EXPECT_EQ(snapshot(c), before);
  h.set_lk("d", "h", 2);
  EXPECT_THROW(cancel(h, "d", "h"), InputError);
}

TEST(Moves, DotZeroSwapIsInvolution) {
  HandleDecomposition h;
  h.add_component(Component::dotted("d"));
  h.add_component(Component::framed("k", 3));
  h.set_lk("d", "k", 1);
  const auto once = dot_zero_swap(h, "d");
  EXPECT_FALSE(once.component("d").is_dotted());
  EXPECT_EQ(dot_zero_swap(once, "d"), h);
  EXPECT_EQ(cokernel(boundary_presentation(once)), cokernel(boundary_presentation(h)));
  EXPECT_THROW(dot_zero_swap(h, "k"), InputError);  // framing 3
}

TEST(Moves, SwapRefusesToLinkDottedCircles) {
  HandleDecomposition h;
  h.add_component(Component::dotted("d"));
  h.add_component(Component::framed("z", 0));
  h.set_lk("d", "z", 1);
  EXPECT_THROW(dot_zero_swap(h, "z"), InputError);
  EXPECT_NO_THROW(twist(h, "d", "z"));
}

TEST(Moves, PairsAddAndDrop) {
  const auto h = two_handles(1, -2, 0);
  const auto a = add_pair(h);
  EXPECT_EQ(a.three_handles, 1u);
  EXPECT_EQ(snapshot(a), snapshot(h));
  EXPECT_EQ(drop_pair(a, "z1"), h);
  EXPECT_THROW(drop_pair(h, "a"), InputError);
}

TEST(Moves, ScriptTextRoundTrip) {
  const MoveScript s{{MoveStep::blow_up(1), MoveStep::blow_up(-1, "e7"), MoveStep::blow_down("e7"),
                      MoveStep::slide("a", "b", -1), MoveStep::cancel("d", "h"), MoveStep::swap("d"),
                      MoveStep::twist("d", "h"), MoveStep::add_pair(), MoveStep::add_pair("z"),
                      MoveStep::drop_pair("z")}};
  for (const auto& step : s.steps) EXPECT_EQ(parse_move(to_string(step)), step) << to_string(step);
  EXPECT_EQ(to_string(s.steps[3]), "slide a over b -");
}

TEST(Moves, ScriptParseErrorsCarryColumns) {
  try {
    parse_move("slide a under b +");
    FAIL();
  } catch (const MoveSyntaxError& e) {
    EXPECT_EQ(e.column(), 9u);
  }
  EXPECT_THROW(parse_move("jump a"), MoveSyntaxError);
  EXPECT_THROW(parse_move("blow_down"), MoveSyntaxError);
  EXPECT_THROW(parse_move("swap a b"), MoveSyntaxError);
}

TEST(Moves, EmptyScriptEmptyLedger) {
  const auto r = replay(two_handles(1, 1, 0), MoveScript{});
  EXPECT_TRUE(r.ledger.empty());
  EXPECT_EQ(r.result, two_handles(1, 1, 0));
}

TEST(Moves, ReplayReportsFailingStep) {
  const MoveScript s{{MoveStep::blow_up(1), MoveStep::blow_down("a")}};
  try {
    replay(two_handles(3, 1, 0), s);
    FAIL();
  } catch (const ReplayError& e) {
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(Moves, LedgerExpectations) {
  const MoveScript s{{MoveStep::blow_up(1), MoveStep::slide("a", "e1", 1), MoveStep::blow_down("e1")}};
  const auto r = replay(two_handles(2, -1, 1), s);
  ASSERT_EQ(r.ledger.size(), 3u);
  EXPECT_EQ(r.ledger[0].after.form.parity, Parity::odd);
  EXPECT_EQ(r.ledger[0].after.euler, snapshot(two_handles(2, -1, 1)).euler + 1);
  for (const auto& e : r.ledger)
    for (const auto& c : e.checks) EXPECT_TRUE(c.held) << c.quantity;
  EXPECT_EQ(snapshot(r.result), snapshot(two_handles(2, -1, 1)));
}

TEST(Moves, RandomScriptsKeepTheLedger) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const HandleDecomposition h = kirby::testing::random_decomposition(rng);
    const MoveScript s = kirby::testing::random_script(rng, h, 12);
    ASSERT_NO_THROW(replay(h, s)) << emit(h);
  }
}

TEST(Moves, SingleSwapMayChangeTheForm) {
  // Dotted d links a; 0-framed h links b. Swapping d changes the form while
  // keeping the boundary.
  HandleDecomposition h;
  h.add_component(Component::dotted("d"));
  h.add_component(Component::framed("h", 0));
  h.add_component(Component::framed("a", 2));
  h.add_component(Component::framed("b", 1));
  h.set_lk("a", "d", 1);
  h.set_lk("b", "h", 1);
  const auto s = dot_zero_swap(h, "d");
  EXPECT_EQ(snapshot(s).boundary_h1, snapshot(h).boundary_h1);
  EXPECT_NE(snapshot(s).form, snapshot(h).form);
  const auto r = replay(h, MoveScript{{MoveStep::swap("d")}});
  EXPECT_EQ(r.ledger.size(), 1u);
}
