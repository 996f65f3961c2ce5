#include <gtest/gtest.h>

#include <memory>

#include "qk/lie_symmetry.hpp"

using namespace qk;

namespace {

bool all_pass(const CheckList& cs) {
    for (const auto& c : cs)
        if (!c.passed) return false;
    return true;
}

const CheckResult& find(const CheckList& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c.name == name) return c;
    throw std::out_of_range(name);
}

MultiPoly var(const PhaseSpace& sp, const std::string& n) { return MultiPoly::var(sp.vars(), n); }

}  // namespace

TEST(LieAlgebra, AbelianAndHeisenbergSatisfyAxioms) {
    for (const auto& g : {LieAlgebraData::abelian(0), LieAlgebraData::abelian(3), LieAlgebraData::heisenberg()})
        EXPECT_TRUE(all_pass(check_lie_algebra(g)));
    auto h = LieAlgebraData::heisenberg();
    EXPECT_FALSE(h.is_abelian());
    EXPECT_EQ(h.structure(2, 0, 1), mpq_class(1));
    EXPECT_EQ(h.structure(2, 1, 0), mpq_class(-1));
    EXPECT_TRUE(LieAlgebraData::abelian(2).is_abelian());
}

TEST(LieAlgebra, BrokenJacobiIsReported) {
    auto g = LieAlgebraData::abelian(3);
    g.set_bracket(0, 1, {1, 0, 0});
    g.set_bracket(1, 2, {0, 1, 0});
    auto cs = check_lie_algebra(g);
    EXPECT_TRUE(find(cs, "antisymmetry").passed);
    EXPECT_FALSE(find(cs, "jacobi").passed);
    EXPECT_FALSE(find(cs, "jacobi").witness.empty());
}

TEST(LieAlgebra, BrokenAntisymmetryIsReported) {
    auto g = LieAlgebraData::abelian(2);
    g.c[0][0][1] = 1;
    EXPECT_FALSE(find(check_lie_algebra(g), "antisymmetry").passed);
}

TEST(TranslationAction, RejectsBadIndices) {
    auto sp = PhaseSpace::canonical(2);
    EXPECT_THROW(TranslationAction::make(sp, {3}), std::invalid_argument);
    EXPECT_THROW(TranslationAction::make(sp, {0}), std::invalid_argument);
    EXPECT_THROW(TranslationAction::make(sp, {1, 1}), std::invalid_argument);
}

TEST(CanonicalMomentumMap, TranslatesFirstTwoCoordinates) {
    auto sp = PhaseSpace::canonical(3);
    auto act = TranslationAction::make(sp, {1, 2});
    auto J = canonical_momentum_map(act);
    ASSERT_EQ(J.components.size(), 2u);
    EXPECT_EQ(J.components[0], var(sp, "p1"));
    EXPECT_EQ(J.components[1], var(sp, "p2"));
    for (const auto& c : J.components) EXPECT_EQ(c.conj(), c);
    EXPECT_TRUE(all_pass(check_generates_action(J, act, 20, 5)));
    EXPECT_TRUE(check_classical_equivariance(J, sp).passed);
}

TEST(CanonicalMomentumMap, EmptyAction) {
    auto sp = PhaseSpace::canonical(2);
    auto J = canonical_momentum_map(TranslationAction::make(sp, {}));
    EXPECT_TRUE(J.components.empty());
    EXPECT_TRUE(check_classical_equivariance(J, sp).passed);
}

TEST(CanonicalMomentumMap, BracketIsTheFieldDerivative) {
    // {f, p_a} = d f / d q_a, expanded by hand on a monomial
    auto sp = PhaseSpace::canonical(2);
    auto act = TranslationAction::make(sp, {2});
    auto J = canonical_momentum_map(act);
    MultiPoly f = var(sp, "q2") * var(sp, "q2") * var(sp, "p1");
    EXPECT_EQ(sp.bracket(f, J.components[0]), GaussianRational(2) * var(sp, "q2") * var(sp, "p1"));
    EXPECT_EQ(act.fundamental(0, f), GaussianRational(2) * var(sp, "q2") * var(sp, "p1"));
}

TEST(MagneticMomentumMap, AddsMinimalCouplingTerm) {
    const mpq_class b(5, 3);
    auto mag = PhaseSpace::magnetic(2, 1, 2, b);
    auto act = TranslationAction::make(mag, {1});
    auto J = magnetic_momentum_map(act, b, 1, 2);
    EXPECT_EQ(J.components[0], var(mag, "p1") + GaussianRational(b) * var(mag, "q2"));
    EXPECT_TRUE(all_pass(check_generates_action(J, act, 20, 6)));
}

TEST(MagneticMomentumMap, ZeroFieldIsCanonical) {
    auto sp = PhaseSpace::canonical(2);
    auto act = TranslationAction::make(sp, {1});
    EXPECT_EQ(magnetic_momentum_map(act, 0, 1, 2).components, canonical_momentum_map(act).components);
}

TEST(MagneticMomentumMap, CanonicalFormDoesNotMatch) {
    // J_B = p1 + b q2 against the untwisted form: dJ has a dq2 part that omega(d/dq1, .) lacks
    auto sp = PhaseSpace::canonical(2);
    auto act = TranslationAction::make(sp, {1});
    auto J = magnetic_momentum_map(act, 2, 1, 2);
    auto cs = check_generates_action(J, act, 5, 7);
    EXPECT_FALSE(find(cs, "differential_matches_omega").passed);
}

TEST(MagneticMomentumMap, TranslatedPartnerBreaksEquivariance) {
    auto sp = PhaseSpace::canonical(2);
    auto act = TranslationAction::make(sp, {1, 2});
    EXPECT_THROW(magnetic_momentum_map(act, 1, 1, 2), EquivarianceError);
    auto act1 = TranslationAction::make(sp, {1});
    EXPECT_THROW(magnetic_momentum_map(act1, 1, 2, 1), EquivarianceError);
    EXPECT_THROW(magnetic_momentum_map(act1, 1, 1, 1), std::invalid_argument);
}

TEST(ShiftMomentumMap, SubtractsLevel) {
    auto sp = PhaseSpace::canonical(1);
    auto J = canonical_momentum_map(TranslationAction::make(sp, {1}));
    EXPECT_EQ(shift_momentum_map(J, {0}).components, J.components);
    auto Jmu = shift_momentum_map(J, {3});
    EXPECT_EQ(Jmu.components[0], var(sp, "p1") - MultiPoly::constant(sp.vars(), GaussianRational(3)));
    // the zero set of J - mu is the mu-level set of J
    Substitution at_level{{"p1", MultiPoly::constant(sp.vars(), GaussianRational(3))}};
    EXPECT_TRUE(substitute(Jmu.components[0], at_level).is_zero());
    EXPECT_EQ(substitute(J.components[0], at_level), MultiPoly::constant(sp.vars(), GaussianRational(3)));
    EXPECT_THROW(shift_momentum_map(J, {1, 2}), DimensionError);

    auto Jq = QuantumMomentumMap::from_classical(J, 2);
    auto Jqmu = shift_momentum_map(Jq, {mpq_class(1, 2)});
    EXPECT_EQ(Jqmu.classical().components[0],
              var(sp, "p1") - MultiPoly::constant(sp.vars(), GaussianRational(mpq_class(1, 2))));
    EXPECT_THROW(shift_momentum_map(Jq, {}), DimensionError);
}

TEST(QuantumMomentumMap, WeylTranslationsAreStronglyInvariant) {
    auto sp = PhaseSpace::canonical(2);
    auto J = canonical_momentum_map(TranslationAction::make(sp, {1, 2}));
    auto Jq = QuantumMomentumMap::from_classical(J, 4);
    auto cs = check_quantum_momentum_map(StarProduct::weyl(sp), Jq, {});
    EXPECT_TRUE(all_pass(cs));
    EXPECT_TRUE(find(cs, "strongly_invariant").passed);
    // abelian side: [p1, p2] vanishes
    EXPECT_TRUE(StarProduct::weyl(sp).commutator(Jq.components[0], Jq.components[1]).is_zero());
}

TEST(QuantumMomentumMap, StdOrderedAndWickTranslations) {
    // [p1, f]_std = p1 f + (lambda/i) df/dq1 - f p1 = i lambda {p1, f}
    auto sp = PhaseSpace::canonical(1);
    auto Jq = QuantumMomentumMap::from_classical(canonical_momentum_map(TranslationAction::make(sp, {1})), 3);
    EXPECT_TRUE(all_pass(check_quantum_momentum_map(StarProduct::std_ordered(sp), Jq, {})));
    EXPECT_TRUE(all_pass(check_quantum_momentum_map(StarProduct::wick(sp), Jq, {})));
}

TEST(QuantumMomentumMap, LambdaCorrectionIsNotStrong) {
    auto sp = PhaseSpace::canonical(2);
    auto Jq = QuantumMomentumMap::from_classical(canonical_momentum_map(TranslationAction::make(sp, {1, 2})), 3);
    Jq.components[0].set(1, MultiPoly::constant(sp.vars(), GaussianRational::i()));
    auto cs = check_quantum_momentum_map(StarProduct::weyl(sp), Jq, {});
    EXPECT_TRUE(all_required_pass(cs));
    EXPECT_FALSE(find(cs, "strongly_invariant").passed);
}

TEST(QuantumMomentumMap, NonMomentumMapFails) {
    auto sp = PhaseSpace::canonical(1);
    auto Jq = QuantumMomentumMap::from_classical(canonical_momentum_map(TranslationAction::make(sp, {1})), 3);
    Jq.components[0] = LambdaSeries(var(sp, "p1") * var(sp, "p1"), 3);
    // lambda^0 part p1^2 alone would pass; the lambda q1 correction is not central
    Jq.components[0].set(1, var(sp, "q1"));
    auto cs = check_quantum_momentum_map(StarProduct::weyl(sp), Jq, {});
    EXPECT_FALSE(find(cs, "quantum_hamiltonian").passed);
}

TEST(QuantumMomentumMap, HeisenbergActsOnTheLine) {
    // J(P) = p, J(Q) = q, J(R) = -1: {p, q} = -1 = J([P, Q])
    auto sp = PhaseSpace::canonical(1);
    MomentumMap J{LieAlgebraData::heisenberg(),
                  {var(sp, "p1"), var(sp, "q1"), MultiPoly::constant(sp.vars(), GaussianRational(-1))}};
    EXPECT_TRUE(check_classical_equivariance(J, sp).passed);
    auto Jq = QuantumMomentumMap::from_classical(J, 3);
    EXPECT_TRUE(all_pass(check_quantum_momentum_map(StarProduct::weyl(sp), Jq, {})));
    J.components[2] = -J.components[2];
    EXPECT_FALSE(check_classical_equivariance(J, sp).passed);
    EXPECT_FALSE(find(check_quantum_momentum_map(StarProduct::weyl(sp), QuantumMomentumMap::from_classical(J, 3), {}),
                      "quantum_bracket")
                     .passed);
}

TEST(QuantumMomentumMap, MagneticPullbackProduct) {
    const mpq_class b(-3, 2);
    auto can = PhaseSpace::canonical(2);
    auto mag = PhaseSpace::magnetic(2, 1, 2, b);
    auto J = magnetic_momentum_map(TranslationAction::make(mag, {1}), b, 1, 2);
    const auto& v = can.vars();
    auto base = std::make_shared<const StarProduct>(StarProduct::weyl(can));
    Substitution fwd{{"p1", MultiPoly::var(v, "p1") + GaussianRational(b) * MultiPoly::var(v, "q2")}};
    Substitution inv{{"p1", MultiPoly::var(v, "p1") - GaussianRational(b) * MultiPoly::var(v, "q2")}};
    auto star = StarProduct::pullback(base, fwd, inv);
    EXPECT_TRUE(all_pass(check_quantum_momentum_map(star, QuantumMomentumMap::from_classical(J, 3), {})));
}

TEST(QuantumMomentumMap, ShiftKeepsVerdicts) {
    auto sp = PhaseSpace::canonical(2);
    auto star = StarProduct::weyl(sp);
    auto J = canonical_momentum_map(TranslationAction::make(sp, {1, 2}));
    auto Jq = QuantumMomentumMap::from_classical(J, 3);
    auto before = check_quantum_momentum_map(star, Jq, {});
    auto after = check_quantum_momentum_map(star, shift_momentum_map(Jq, {2, mpq_class(-1, 3)}), {});
    ASSERT_EQ(before.size(), after.size());
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(before[i].passed, after[i].passed);

    MomentumMap bad{J.lie, {var(sp, "p1"), var(sp, "q1")}};
    auto bad_shift = shift_momentum_map(bad, {1, 1});
    EXPECT_EQ(check_classical_equivariance(bad, sp).passed, check_classical_equivariance(bad_shift, sp).passed);
}

TEST(ClassicalEquivariance, FailureWitness) {
    auto sp = PhaseSpace::canonical(1);
    MomentumMap J{LieAlgebraData::abelian(2), {var(sp, "p1"), var(sp, "q1")}};
    auto r = check_classical_equivariance(J, sp);
    EXPECT_FALSE(r.passed);
    EXPECT_NE(r.witness.find("lhs=[(-1/1)+(0/1)i] rhs=0"), std::string::npos) << r.witness;
}
