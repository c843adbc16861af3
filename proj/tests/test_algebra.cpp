#include <gtest/gtest.h>

#include "support.hpp"

using namespace kirby;
using kirby::testing::Rng;

namespace {

bool is_diagonal_divisible(const IntegerMatrix& d, std::size_t rank) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (std::size_t i = 0; i < rank; ++i) {
    if (d(i, i) <= 0) return false;
    if (i + 1 < rank && d(i + 1, i + 1) % d(i, i) != 0) return false;
  }
  for (std::size_t i = rank; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) return false;
  return true;
}

}  // namespace

TEST(Matrix, DeterminantBareiss) {
  EXPECT_EQ(determinant(IntegerMatrix{{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(determinant(IntegerMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntegerMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 0);
  EXPECT_EQ(determinant(IntegerMatrix{{0, 0, 2}, {0, 3, 0}, {5, 0, 0}}), -30);
  EXPECT_EQ(determinant(IntegerMatrix(0, 0)), 1);
}

TEST(Matrix, ToString) {
  EXPECT_EQ((IntegerMatrix{{1, -2}, {3, 4}}).to_string(), "[[1,-2],[3,4]]");
}

TEST(Smith, SpecExample) {
  const IntegerMatrix m{{2, 4}, {6, 8}};
  const SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.diagonal(), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
}

TEST(Smith, ZeroAndEmpty) {
  EXPECT_EQ(smith_normal_form(IntegerMatrix(2, 3)).rank, 0u);
  EXPECT_EQ(cokernel(IntegerMatrix(2, 3)).free_rank, 2u);
  EXPECT_EQ(cokernel(IntegerMatrix(0, 0)), AbelianGroup{});
  EXPECT_TRUE(cokernel(IntegerMatrix(0, 3)).is_trivial());
}

TEST(Smith, RandomAgainstDeterminantalDivisors) {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t r = static_cast<std::size_t>(kirby::testing::uniform(rng, 1, 4));
    const std::size_t c = static_cast<std::size_t>(kirby::testing::uniform(rng, 1, 4));
    const IntegerMatrix m = kirby::testing::random_matrix(rng, r, c, 6);
    const SmithForm s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.D) << m;
    ASSERT_TRUE(is_diagonal_divisible(s.D, s.rank)) << m;
    ASSERT_EQ(abs(determinant(s.U)), 1);
    ASSERT_EQ(abs(determinant(s.V)), 1);
    ASSERT_EQ(s.diagonal(), kirby::testing::determinantal_invariant_factors(m)) << m;
  }
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel(IntegerMatrix{{5}}).to_string(), "Z/5");
  EXPECT_EQ(cokernel(IntegerMatrix{{0}}).to_string(), "Z");
  EXPECT_EQ(cokernel(IntegerMatrix{{2, 0}, {0, 4}}).to_string(), "Z/2 + Z/4");
  EXPECT_EQ(cokernel(IntegerMatrix{{2, 0}, {0, 3}}).to_string(), "Z/6");
  EXPECT_EQ(cokernel(IntegerMatrix{{1, 0}, {0, 0}, {0, 0}}).to_string(), "Z^2");
}

TEST(Kernel, BasisSpansAndIsPrimitive) {
  EXPECT_EQ(kernel_basis(IntegerMatrix{{2, -1}}), (IntegerMatrix{{1}, {2}}));
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const IntegerMatrix m = kirby::testing::random_matrix(rng, 2, 4, 3);
    const IntegerMatrix k = kernel_basis(m);
    ASSERT_EQ(k.cols(), m.cols() - rank(m));
    ASSERT_TRUE((m * k).is_zero());
    // Saturated: the basis has trivial cokernel torsion.
    if (k.cols() > 0) ASSERT_TRUE(cokernel(k).is_torsion_free());
  }
}

TEST(Forms, InvariantsOfStandardForms) {
  const auto h = form_invariants(SymmetricForm(IntegerMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(h.rank, 2u);
  EXPECT_EQ(h.signature, 0);
  EXPECT_EQ(h.parity, Parity::even);
  EXPECT_EQ(h.det_abs, 1);

  const auto e8ish = form_invariants(SymmetricForm(IntegerMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(e8ish.signature, 2);
  EXPECT_EQ(e8ish.parity, Parity::even);
  EXPECT_EQ(e8ish.det_abs, 3);

  const auto degenerate = form_invariants(SymmetricForm(IntegerMatrix{{0, 0}, {0, -3}}));
  EXPECT_EQ(degenerate.rank, 1u);
  EXPECT_EQ(degenerate.signature, -1);
  EXPECT_EQ(degenerate.det_abs, 0);
}

TEST(Forms, ZeroDiagonalPivotHandled) {
  const auto inv = form_invariants(SymmetricForm(IntegerMatrix{{0, 2, 0}, {2, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(inv.rank, 2u);
  EXPECT_EQ(inv.signature, 0);
}

TEST(Forms, AsymmetricRejected) { EXPECT_THROW(SymmetricForm(IntegerMatrix{{1, 2}, {0, 1}}), InputError); }

TEST(Forms, EquivalenceWitness) {
  const SymmetricForm a(IntegerMatrix{{0, 1}, {1, 1}});
  const SymmetricForm b = SymmetricForm::diagonal({1, -1});
  const auto r = forms_equivalent(a, b, 3);
  ASSERT_EQ(r.verdict, Equivalence::equivalent);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(a.congruent(*r.witness), b);
  EXPECT_EQ(abs(determinant(*r.witness)), 1);
}

TEST(Forms, DistinctByInvariants) {
  // Same rank, signature and |det|; parity separates them.
  const auto r = forms_equivalent(SymmetricForm(IntegerMatrix{{2, 1}, {1, 2}}), SymmetricForm::diagonal({1, 3}), 3);
  EXPECT_EQ(r.verdict, Equivalence::distinct);
  EXPECT_EQ(r.reason, "parity differs");
  EXPECT_EQ(forms_equivalent(SymmetricForm::diagonal({1}), SymmetricForm::diagonal({-1}), 3).verdict,
            Equivalence::distinct);
}

TEST(Forms, RandomUnimodularCongruences) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(kirby::testing::uniform(rng, 1, 4));
    IntegerMatrix m = kirby::testing::random_matrix(rng, n, n, 4);
    m = m + m.transpose();
    const SymmetricForm q(m);
    const IntegerMatrix t = kirby::testing::random_unimodular(rng, n);
    ASSERT_EQ(abs(determinant(t)), 1);
    const SymmetricForm q2 = q.congruent(t);
    ASSERT_EQ(form_invariants(q), form_invariants(q2)) << m << " / " << t;
    ASSERT_NE(forms_equivalent(q, q2, 2, 200000).verdict, Equivalence::distinct);
  }
}

TEST(AbelianGroupText, Canonical) {
  EXPECT_EQ(AbelianGroup{}.to_string(), "0");
  EXPECT_EQ(AbelianGroup::cyclic(0).to_string(), "Z");
  EXPECT_EQ(AbelianGroup::cyclic(-7).to_string(), "Z/7");
  EXPECT_TRUE(AbelianGroup::cyclic(1).is_trivial());
}
