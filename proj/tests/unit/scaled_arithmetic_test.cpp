#include "scalefield/scaled_arithmetic.hpp"

#include <gtest/gtest.h>

#include "scalefield/error.hpp"
#include "support/error_code.hpp"
#include "support/generators.hpp"

namespace scalefield {
namespace {

using testing::CodeOf;
using testing::Gen;

Rational Q(std::string_view text) { return ParseRational(text); }

TEST(ParseRational, AcceptsFractionsAndDecimals) {
  EXPECT_EQ(Q("7"), Rational(7));
  EXPECT_EQ(Q("-7/3"), Rational(-7, 3));
  EXPECT_EQ(Q("1.25"), Rational(5, 4));
  EXPECT_EQ(Q("-2.5e-3"), Rational(-1, 400));
  EXPECT_EQ(CodeOf([] { Q("1/0"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Q("abc"); }), ErrorCode::kInvalidArgument);
}

TEST(Scalar, ComplexDivisionByZero) {
  EXPECT_EQ(CodeOf([] { (void)(Scalar(ComplexRational(1, 2)) / Scalar(0)); }), ErrorCode::kDivisionByZero);
}

TEST(Scalar, OrderOnComplexIsUndefined) {
  EXPECT_EQ(CodeOf([] { (void)(Scalar(ComplexRational(1, 2)) < Scalar(1)); }), ErrorCode::kOrderUndefined);
}

TEST(ScalingFactor, RejectsZero) {
  EXPECT_EQ(CodeOf([] { ScalingFactor(0); }), ErrorCode::kZeroScaling);
  EXPECT_EQ(CodeOf([] { ScalingFactor::Parse("0/5"); }), ErrorCode::kZeroScaling);
}

TEST(ScalingFactor, ParsesComplex) {
  const ScalingFactor f = ScalingFactor::Parse("1:2");
  EXPECT_FALSE(f.is_real());
  EXPECT_EQ(f.value(), Scalar(ComplexRational(1, 2)));
}

TEST(ScaledStructure, NaturalsNeedPositiveIntegerFactors) {
  EXPECT_EQ(CodeOf([] { ScaledStructure(NumberKind::kNatural, ScalingFactor::Parse("3/2"), 1); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ScaledStructure(NumberKind::kNatural, -2, 1); }), ErrorCode::kInvalidArgument);
  const ScaledStructure n4(NumberKind::kNatural, 4, 1);
  EXPECT_EQ(*n4.base_set_stride(), Integer(4));
  EXPECT_TRUE(n4.in_base_set(BaseNumber::Natural("12")));
  EXPECT_FALSE(n4.in_base_set(BaseNumber::Natural("13")));
}

TEST(BaseNumber, NaturalPayloadIsNonnegativeInteger) {
  EXPECT_EQ(CodeOf([] { BaseNumber::Natural("-1"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { BaseNumber::Make(NumberKind::kNatural, Scalar(Rational(1, 2))); }),
            ErrorCode::kInvalidArgument);
}

TEST(BaseNumber, IdentityIgnoresStructure) {
  const BaseNumber a = BaseNumber::Natural("6");
  const ScalingFactor two(2);
  const ScalingFactor three(3);
  EXPECT_EQ(NumberOf(ValueOf(a, two)), NumberOf(ValueOf(a, three)));
}

// value_of / number_of

TEST(ValueOf, NaturalExamples) {
  EXPECT_EQ(ValueOf(BaseNumber::Natural("6"), 2).value, Scalar(3));
  EXPECT_EQ(ValueOf(BaseNumber::Natural("12"), 4).value, Scalar(3));
  EXPECT_EQ(ValueOf(BaseNumber::Natural("17"), 1).value, Scalar(17));
}

TEST(ValueOf, NaturalNotMultipleOfLevel) {
  EXPECT_EQ(CodeOf([] { ValueOf(BaseNumber::Natural("7"), 2); }), ErrorCode::kNotInBaseSet);
}

TEST(NumberOf, Examples) {
  EXPECT_EQ(NumberOf(NumberKind::kNatural, Scalar(3), 2), BaseNumber::Natural("6"));
  EXPECT_EQ(NumberOf(NumberKind::kNatural, Scalar(1), 9), BaseNumber::Natural("9"));
  EXPECT_EQ(NumberOf(NumberKind::kRational, Scalar(Rational(7, 3)), 3), BaseNumber::FromRational(7));
}

TEST(NumberOf, NaturalNeedsIntegerProduct) {
  EXPECT_EQ(CodeOf([] { NumberOf(NumberKind::kNatural, Scalar(Rational(1, 3)), 2); }),
            ErrorCode::kNotRepresentable);
  EXPECT_EQ(CodeOf([] { NumberOf(NumberKind::kNatural, Scalar(-1), 2); }), ErrorCode::kNotRepresentable);
}

TEST(ValueOf, RoundTripProperty) {
  Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const BaseNumber a = BaseNumber::FromRational(gen.Q());
    const ScalingFactor s(Scalar(gen.NonzeroQ()));
    EXPECT_EQ(NumberOf(ValueOf(a, s)), a);

    const Scalar v(gen.Q());
    EXPECT_EQ(ValueOf(NumberOf(NumberKind::kRational, v, s), s).value, v);
  }
  for (int i = 0; i < 200; ++i) {
    const auto n = gen.Int(1, 50);
    const BaseNumber a = BaseNumber::Natural(Integer(n * gen.Int(0, 1000)));
    EXPECT_EQ(NumberOf(ValueOf(a, ScalingFactor(static_cast<int>(n)))), a);
  }
}

TEST(ValueOf, OnlyZeroIsScaleFixed) {
  Gen gen(12);
  for (int i = 0; i < 300; ++i) {
    const ScalingFactor s(Scalar(gen.NonzeroQ()));
    ScalingFactor u(Scalar(gen.NonzeroQ()));
    if (u == s) continue;
    EXPECT_TRUE(ValueOf(BaseNumber::FromRational(0), s).value.is_zero());
    const BaseNumber a = BaseNumber::FromRational(gen.NonzeroQ());
    EXPECT_FALSE(ValueOf(a, s).value == ValueOf(a, u).value);
  }
}

// relabel

TEST(Relabel, Examples) {
  EXPECT_EQ(Relabel(Scalar(3), 4, 2), Scalar(6));
  EXPECT_EQ(Relabel(Scalar(Rational(5, 9)), 7, 7), Scalar(Rational(5, 9)));
  const Scalar direct = Relabel(Scalar(5), 6, 1);
  const Scalar two_hops = Relabel(Relabel(Scalar(5), 6, 3), 3, 1);
  EXPECT_EQ(direct, Scalar(30));
  EXPECT_EQ(two_hops, Scalar(30));
}

TEST(Relabel, ScaledValueFollowsStructure) {
  const ScaledValue v = ValueOf(BaseNumber::Natural("12"), 4);
  const ScaledValue w = Relabel(v, 2);
  EXPECT_EQ(w.value, Scalar(6));
  EXPECT_EQ(w.structure.level_s(), ScalingFactor(2));
  EXPECT_EQ(NumberOf(w), BaseNumber::Natural("12"));
}

TEST(Relabel, CompositionAndInverseProperty) {
  Gen gen(13);
  for (int i = 0; i < 1000; ++i) {
    const ScalingFactor u(Scalar(gen.NonzeroQ()));
    const ScalingFactor t(Scalar(gen.NonzeroQ()));
    const ScalingFactor s(Scalar(gen.NonzeroQ()));
    const Scalar v(gen.Q());
    EXPECT_EQ(Relabel(Relabel(v, u, t), t, s), Relabel(v, u, s));
    EXPECT_EQ(Relabel(Relabel(v, u, t), t, u), v);
  }
}

TEST(Relabel, ComplexFactorsCompose) {
  Gen gen(14);
  for (int i = 0; i < 200; ++i) {
    const ScalingFactor u(Scalar(gen.NonzeroC()));
    const ScalingFactor t(Scalar(gen.NonzeroC()));
    const ScalingFactor s(Scalar(gen.NonzeroQ()));
    const Scalar v(gen.NonzeroC());
    EXPECT_EQ(Relabel(Relabel(v, u, t), t, s), Relabel(v, u, s));
  }
}

// scaled operations

TEST(ScaledOps, IdentityExamples) {
  const ScaledOps ops(ScaledStructure(NumberKind::kRational, 2, 1));
  EXPECT_EQ(ops.identity(), Scalar(2));
  EXPECT_EQ(ops.mul(Scalar(3), ops.identity()), Scalar(3));

  for (int n : {1, 2, 3, 8, 10}) {
    const ScaledOps nat(ScaledStructure(NumberKind::kNatural, n, 2));
    EXPECT_EQ(nat.identity(), Scalar(Rational(n, 2)));
  }
}

TEST(ScaledOps, InverseExample) {
  const ScaledOps ops(ScaledStructure(NumberKind::kRational, 4, 1));
  const Scalar inv = ops.inv(Scalar(2));
  EXPECT_EQ(inv, Scalar(8));
  EXPECT_EQ(ops.mul(Scalar(2), inv), Scalar(4));
  EXPECT_EQ(ops.mul(Scalar(2), inv), ops.identity());
}

TEST(ScaledOps, InverseOfZero) {
  const ScaledOps ops(ScaledStructure(NumberKind::kRational, 4, 1));
  EXPECT_EQ(CodeOf([&] { ops.inv(Scalar(0)); }), ErrorCode::kDivisionByZero);
}

TEST(ScaledOps, OrderReversesForNegativeRatio) {
  const ScaledOps pos(ScaledStructure(NumberKind::kRational, 3, 2));
  const ScaledOps neg(ScaledStructure(NumberKind::kRational, -3, 2));
  EXPECT_TRUE(pos.less(Scalar(1), Scalar(2)));
  EXPECT_FALSE(neg.less(Scalar(1), Scalar(2)));
  EXPECT_TRUE(neg.less(Scalar(2), Scalar(1)));
}

TEST(ScaledOps, OrderUndefinedForComplex) {
  const ScaledOps c(ScaledStructure(NumberKind::kComplex, 3, 2));
  EXPECT_EQ(CodeOf([&] { c.less(Scalar(1), Scalar(2)); }), ErrorCode::kOrderUndefined);
  const ScaledOps q(ScaledStructure(NumberKind::kRational, ScalingFactor::Parse("1:1"), 2));
  EXPECT_FALSE(q.structure().is_ordered());
  EXPECT_EQ(CodeOf([&] { q.less(Scalar(1), Scalar(2)); }), ErrorCode::kOrderUndefined);
}

TEST(ScaledOps, ConjugationKeepsIdentity) {
  const ScaledOps c(ScaledStructure(NumberKind::kComplex, ScalingFactor::Parse("1:2"), 3));
  EXPECT_EQ(c.conj(c.identity()), c.identity());
  const Scalar a(ComplexRational(Rational(2, 5), Rational(-7, 3)));
  EXPECT_EQ(c.conj(c.conj(a)), a);
}

TEST(ScaledOps, NaturalsHaveNoInverses) {
  const ScaledOps nat(ScaledStructure(NumberKind::kNatural, 4, 2));
  EXPECT_EQ(CodeOf([&] { nat.neg(Scalar(2)); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { nat.inv(Scalar(2)); }), ErrorCode::kInvalidArgument);
}

// axiom suite

TEST(AxiomSuite, RationalThreeSevenPasses) {
  const AxiomReport report = AxiomSuite(ScaledStructure(NumberKind::kRational, 3, 7), 1000, 1);
  EXPECT_TRUE(report.all_passed());
  EXPECT_EQ(report.find("mul_inverse")->checked, 1000u);
  EXPECT_TRUE(report.find("order_trichotomy")->applicable);
  EXPECT_FALSE(report.find("conj_involution")->applicable);
}

TEST(AxiomSuite, UnscaledPasses) {
  for (NumberKind kind : {NumberKind::kNatural, NumberKind::kRational, NumberKind::kReal, NumberKind::kComplex}) {
    EXPECT_TRUE(AxiomSuite(ScaledStructure(kind, 1, 1), 200, 2).all_passed()) << NumberKindName(kind);
  }
}

TEST(AxiomSuite, EveryKindPassesUnderScaling) {
  EXPECT_TRUE(AxiomSuite(ScaledStructure(NumberKind::kNatural, 6, 4), 300, 3).all_passed());
  EXPECT_TRUE(AxiomSuite(ScaledStructure(NumberKind::kReal, ScalingFactor::Parse("-5/3"), 2), 300, 3).all_passed());
  EXPECT_TRUE(
      AxiomSuite(ScaledStructure(NumberKind::kComplex, ScalingFactor::Parse("2:-3"), ScalingFactor::Parse("1/4")), 300, 3)
          .all_passed());
  EXPECT_TRUE(
      AxiomSuite(ScaledStructure(NumberKind::kRational, ScalingFactor::Parse("1:1"), ScalingFactor::Parse("-2")), 300, 3)
          .all_passed());
}

TEST(AxiomSuite, SameSeedSameReport) {
  const ScaledOps ops(ScaledStructure(NumberKind::kRational, 3, 1), OperationFactors{3, 3, 9, 1});
  const AxiomReport a = AxiomSuite(ops, 50, 99);
  const AxiomReport b = AxiomSuite(ops, 50, 99);
  ASSERT_EQ(a.axioms.size(), b.axioms.size());
  for (std::size_t i = 0; i < a.axioms.size(); ++i) EXPECT_EQ(a.axioms[i].counterexample, b.axioms[i].counterexample);
}

TEST(AxiomSuite, CorruptedMultiplicationIsCaught) {
  // t/s where s/t belongs.
  const ScaledStructure st(NumberKind::kRational, 4, 1);
  OperationFactors bad = FactorsFor(st, Convention::kAxiomConsistent);
  bad.mul = st.ratio();
  const AxiomReport report = AxiomSuite(ScaledOps(st, bad), 100, 5);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(report.find("mul_identity")->passed);
  EXPECT_FALSE(report.find("mul_inverse")->passed);
  EXPECT_FALSE(report.find("mul_identity")->counterexample.empty());
}

TEST(AxiomSuite, UniformFactorConventionBreaksInverse) {
  const AxiomReport report =
      AxiomSuite(ScaledStructure(NumberKind::kRational, 4, 1), 100, 6, Convention::kUniformFactor);
  EXPECT_FALSE(report.find("mul_inverse")->passed);
  EXPECT_TRUE(report.find("mul_identity")->passed);

  const AxiomReport complex = AxiomSuite(ScaledStructure(NumberKind::kComplex, ScalingFactor::Parse("1:2"), 3), 100,
                                         6, Convention::kUniformFactor);
  EXPECT_FALSE(complex.find("conj_involution")->passed);
  EXPECT_FALSE(complex.find("conj_identity")->passed);

  // With t = s the conventions coincide.
  EXPECT_TRUE(AxiomSuite(ScaledStructure(NumberKind::kRational, 5, 5), 100, 6, Convention::kUniformFactor)
                  .all_passed());
}

TEST(AxiomSuite, RequiresSamples) {
  EXPECT_EQ(CodeOf([] { AxiomSuite(ScaledStructure(NumberKind::kRational, 1, 1), 0, 1); }),
            ErrorCode::kInvalidArgument);
}

// group action

TEST(GroupAction, Examples) {
  const ScalingFactor c = ScalingFactor::Parse("5/7");
  EXPECT_EQ(GroupAction(1, c), c);
  EXPECT_EQ(GroupAction(3, GroupAction(2, 5)), ScalingFactor(30));
  EXPECT_EQ(GroupAction(2, GroupAction(3, 5)), ScalingFactor(30));
  EXPECT_EQ(GroupAction(c.inverse(), c), ScalingFactor(1));
}

TEST(GroupAction, AbelianActionProperty) {
  Gen gen(15);
  for (int i = 0; i < 300; ++i) {
    const ScalingFactor s(Scalar(gen.NonzeroC(50)));
    const ScalingFactor u(Scalar(gen.NonzeroQ(50)));
    const ScalingFactor c(Scalar(gen.NonzeroC(50)));
    EXPECT_EQ(GroupAction(s, GroupAction(u, c)), GroupAction(GroupAction(s, u), c));
    EXPECT_EQ(GroupAction(s, GroupAction(u, c)), GroupAction(u, GroupAction(s, c)));
    EXPECT_EQ(GroupAction(s.inverse(), GroupAction(s, c)), c);
  }
}

// vector spaces

TEST(ScaledVectorSpace, ScalarIdentityActsTrivially) {
  const ScaledVectorSpace space(3, NumberKind::kRational, 5, 2);
  const ScaledVectorSpace::Vector v{Scalar(1), Scalar(Rational(-3, 4)), Scalar(7)};
  EXPECT_EQ(space.scale(space.scalars().identity(), v), v);
}

TEST(ScaledVectorSpace, AxiomsPass) {
  EXPECT_TRUE(VectorAxiomSuite(ScaledVectorSpace(3, NumberKind::kRational, 5, 2), 200, 7).all_passed());
  EXPECT_TRUE(VectorAxiomSuite(ScaledVectorSpace(4, NumberKind::kComplex, 1, 3), 200, 7).all_passed());
  EXPECT_TRUE(VectorAxiomSuite(ScaledVectorSpace(2, NumberKind::kReal, ScalingFactor::Parse("7/9"), 1), 200, 7)
                  .all_passed());
}

TEST(ScaledVectorSpace, UniformFactorBreaksScalarIdentity) {
  const AxiomReport report =
      VectorAxiomSuite(ScaledVectorSpace(3, NumberKind::kRational, 5, 2, Convention::kUniformFactor), 100, 8);
  EXPECT_FALSE(report.find("scalar_identity")->passed);
}

TEST(ScaledVectorSpace, NormIsHomogeneous) {
  const ScaledVectorSpace space(2, NumberKind::kRational, 3, 1);
  const ScaledVectorSpace::Vector v{Scalar(3), Scalar(4)};
  EXPECT_EQ(space.norm_squared(v), Scalar(25));
  // |a.v| = |a| |v| / r with r = 3 in the scaled product.
  const ScaledVectorSpace::Vector w = space.scale(Scalar(-6), v);
  EXPECT_EQ(space.norm_squared(w), Scalar(100));
}

TEST(ScaledVectorSpace, NeedsPositiveRealRatio) {
  EXPECT_EQ(CodeOf([] { ScaledVectorSpace(2, NumberKind::kRational, -1, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ScaledVectorSpace(2, NumberKind::kComplex, ScalingFactor::Parse("0:1"), 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(ScaledVectorSpace, DimensionMismatch) {
  const ScaledVectorSpace space(2, NumberKind::kRational, 1, 1);
  EXPECT_EQ(CodeOf([&] { space.add({Scalar(1)}, {Scalar(1), Scalar(2)}); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace scalefield
