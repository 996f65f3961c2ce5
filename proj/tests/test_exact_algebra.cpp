#include <gtest/gtest.h>

#include "qk/invert_unipotent.hpp"
#include "qk/lambda_series.hpp"
#include "qk/star_product.hpp"
#include "qk/random.hpp"

using namespace qk;

namespace {

const VarList V = phase_vars(2);  // q1 q2 p1 p2

MultiPoly x(const std::string& n) { return MultiPoly::var(V, n); }
MultiPoly c(long a, long b = 1) { return MultiPoly::constant(V, GaussianRational::frac(a, b)); }

}  // namespace

TEST(GaussianRational, CanonicalForm) {
    GaussianRational a = GaussianRational::frac(2, 4, -6, -8);
    EXPECT_EQ(a.re(), mpq_class(1, 2));
    EXPECT_EQ(a.im(), mpq_class(3, 4));
    EXPECT_EQ(a.str(), "(1/2)+(3/4)i");
    EXPECT_EQ(GaussianRational(-3).str(), "(-3/1)+(0/1)i");
}

TEST(GaussianRational, FieldOperations) {
    GaussianRational I = GaussianRational::i();
    EXPECT_EQ(I * I, GaussianRational(-1));
    GaussianRational z = GaussianRational::frac(3, 5, -2, 7);
    EXPECT_EQ(z * z.inverse(), GaussianRational(1));
    EXPECT_EQ((z / z), GaussianRational(1));
    EXPECT_THROW(GaussianRational(0).inverse(), std::domain_error);
    EXPECT_THROW(GaussianRational::frac(1, 0), std::domain_error);
}

TEST(MultiPoly, DifferenceOfSquares) {
    EXPECT_EQ((x("q1") + x("p1")) * (x("q1") - x("p1")), x("q1") * x("q1") - x("p1") * x("p1"));
}

TEST(MultiPoly, ConjugateFlipsImaginaryUnit) {
    MultiPoly f = GaussianRational::i() * x("q1");
    EXPECT_EQ(f.conj(), GaussianRational::frac(0, 1, -1, 1) * x("q1"));
}

TEST(MultiPoly, ExactRationalAddition) {
    MultiPoly f = GaussianRational::frac(2, 3) * x("q1") + GaussianRational::frac(1, 3) * x("q1");
    EXPECT_EQ(f, x("q1"));
    EXPECT_EQ(f.terms().size(), 1u);
}

TEST(MultiPoly, NoZeroTermsStored) {
    MultiPoly f = x("q1") + x("p2") - x("q1");
    EXPECT_EQ(f.terms().size(), 1u);
    for (const auto& [e, coef] : f.terms()) {
        EXPECT_FALSE(coef.is_zero());
        EXPECT_EQ(e.size(), V->size());
    }
}

TEST(MultiPoly, VariableListMismatchIsDimensionError) {
    MultiPoly a = MultiPoly::var(phase_vars(1), "q1");
    EXPECT_THROW(a + x("q1"), DimensionError);
    EXPECT_THROW(a * x("q1"), DimensionError);
}

TEST(MultiPoly, CanonicalRendering) {
    MultiPoly f = x("q1") * x("q1") * x("p1") + GaussianRational::frac(-1, 2) * x("q2") + c(3);
    EXPECT_EQ(f.str(), "[(1/1)+(0/1)i]*q1^2*p1 + [(-1/2)+(0/1)i]*q2 + [(3/1)+(0/1)i]");
    EXPECT_EQ(MultiPoly(V).str(), "0");
}

TEST(MultiPoly, GrlexOrderPutsHigherDegreeFirst) {
    MultiPoly f = x("p2") + x("q1") * x("q2") + x("q1");
    std::vector<int> degrees;
    for (const auto& [e, coef] : f.terms()) degrees.push_back(e[0] + e[1] + e[2] + e[3]);
    EXPECT_EQ(degrees, (std::vector<int>{2, 1, 1}));
    // among degree one, q1 precedes p2
    auto it = std::next(f.terms().begin());
    EXPECT_EQ(it->first[0], 1);
}

TEST(PartialDerivative, PowerRule) {
    EXPECT_EQ((x("q1") * x("p1") * x("p1")).derivative("p1"), c(2) * x("q1") * x("p1"));
    EXPECT_TRUE(x("q1").derivative("q2").is_zero());
    EXPECT_THROW(x("q1").derivative("z9"), DimensionError);
}

TEST(PartialDerivative, MixedPartialsCommuteAgainstMonomialOracle) {
    SampleRng rng(11);
    for (int s = 0; s < 30; ++s) {
        MultiPoly f = rng.poly(V, all_indices(V), 4, 6);
        // oracle: d_q1 d_p1 x^e = e_q1 e_p1 x^{e - 1_q1 - 1_p1}
        MultiPoly oracle(V);
        for (const auto& [e, coef] : f.terms()) {
            if (e[0] == 0 || e[2] == 0) continue;
            Exponent g = e;
            --g[0];
            --g[2];
            oracle.add_term(g, coef * GaussianRational(e[0] * e[2]));
        }
        EXPECT_EQ(f.derivative("q1").derivative("p1"), oracle);
        EXPECT_EQ(f.derivative("p1").derivative("q1"), oracle);
    }
}

TEST(PartialDerivative, LeibnizRule) {
    SampleRng rng(12);
    for (int s = 0; s < 20; ++s) {
        MultiPoly f = rng.poly(V, all_indices(V), 3), g = rng.poly(V, all_indices(V), 3);
        EXPECT_EQ((f * g).derivative("q2"), f.derivative("q2") * g + f * g.derivative("q2"));
    }
}

TEST(Substitute, RetractionOntoZeroSection) {
    EXPECT_TRUE(substitute(x("p1") * x("p1"), {{"p1", MultiPoly(V)}}).is_zero());
}

TEST(Substitute, FiberTranslation) {
    MultiPoly b = GaussianRational::frac(5, 3) * x("q2");
    EXPECT_EQ(substitute(x("p1"), {{"p1", x("p1") + b}}), x("p1") + b);
}

TEST(Substitute, IsRingHomomorphism) {
    SampleRng rng(13);
    Substitution s{{"p1", x("p1") + x("q2") * x("q2")}, {"q1", c(2) * x("q1") - x("p2")}};
    for (int k = 0; k < 50; ++k) {
        MultiPoly f = rng.poly(V, all_indices(V), 3), g = rng.poly(V, all_indices(V), 3);
        EXPECT_EQ(substitute(f * g, s), substitute(f, s) * substitute(g, s));
        EXPECT_EQ(substitute(f + g, s), substitute(f, s) + substitute(g, s));
    }
}

TEST(Substitute, UnknownVariableIsError) {
    EXPECT_THROW(substitute(x("q1"), {{"zz", x("q1")}}), DimensionError);
}

TEST(TIntegral, Examples) {
    VarList W = extend_vars(V, {"t"});
    MultiPoly t = MultiPoly::var(W, "t"), p1 = MultiPoly::var(W, "p1");
    MultiPoly p1_on_V = x("p1");
    EXPECT_EQ(t_integral(t * p1), GaussianRational::frac(1, 2) * p1_on_V);
    EXPECT_EQ(t_integral(GaussianRational(2) * t * p1), p1_on_V);
    EXPECT_EQ(t_integral(MultiPoly::constant(W, 1)), c(1));
    EXPECT_EQ(t_integral(t * t * t), c(1, 4));
}

TEST(LambdaSeries, CauchyProductTruncates) {
    LambdaSeries a = LambdaSeries::from_coeffs({c(1), x("q1"), MultiPoly(V)});
    LambdaSeries b = LambdaSeries::from_coeffs({c(1), -x("q1"), MultiPoly(V)});
    LambdaSeries want = LambdaSeries::from_coeffs({c(1), MultiPoly(V), -(x("q1") * x("q1"))});
    EXPECT_EQ(a * b, want);
}

TEST(LambdaSeries, ShiftDropsTopCoefficient) {
    LambdaSeries a = LambdaSeries::from_coeffs({c(1), MultiPoly(V), x("p2")});
    LambdaSeries s = a.shift();
    EXPECT_EQ(s, LambdaSeries::from_coeffs({MultiPoly(V), c(1), MultiPoly(V)}));
    EXPECT_EQ(s.unshift(), LambdaSeries::from_coeffs({c(1), MultiPoly(V), MultiPoly(V)}));
    EXPECT_THROW(a.unshift(), std::domain_error);
}

TEST(LambdaSeries, OrderMismatchIsError) {
    EXPECT_THROW(LambdaSeries(V, 2) + LambdaSeries(V, 3), DimensionError);
    EXPECT_THROW(LambdaSeries(V, 2) * LambdaSeries(V, 3), DimensionError);
}

TEST(LambdaSeries, RenderingListsNonzeroOrders) {
    LambdaSeries a = LambdaSeries::from_coeffs({x("q1"), MultiPoly(V), c(1, 2)});
    EXPECT_EQ(a.str(), "λ^0:[(1/1)+(0/1)i]*q1; λ^2:[(1/2)+(0/1)i]");
    EXPECT_EQ(LambdaSeries(V, 3).str(), "0");
}

TEST(RingAxioms, MultiPolyOnRandomTriples) {
    SampleRng rng(21);
    for (int s = 0; s < 20; ++s) {
        MultiPoly a = rng.poly(V, all_indices(V), 6, 4), b = rng.poly(V, all_indices(V), 6, 4),
                  d = rng.poly(V, all_indices(V), 6, 4);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a * b) * d, a * (b * d));
        EXPECT_EQ((a + b) + d, a + (b + d));
        EXPECT_EQ(a * (b + d), a * b + a * d);
        EXPECT_EQ(a - a, MultiPoly(V));
        EXPECT_EQ(a * c(1), a);
    }
}

TEST(RingAxioms, LambdaSeriesOnRandomTriples) {
    SampleRng rng(22);
    for (int s = 0; s < 20; ++s) {
        LambdaSeries a = rng.series(V, all_indices(V), 3, 6, 6), b = rng.series(V, all_indices(V), 3, 6, 6),
                     d = rng.series(V, all_indices(V), 3, 6, 6);
        EXPECT_EQ((a * b) * d, a * (b * d));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + d), a * b + a * d);
    }
}

TEST(Conjugation, InvolutiveAutomorphismFixingRationals) {
    SampleRng rng(23);
    for (int s = 0; s < 20; ++s) {
        MultiPoly a = rng.poly(V, all_indices(V), 4), b = rng.poly(V, all_indices(V), 4);
        EXPECT_EQ(a.conj().conj(), a);
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        EXPECT_EQ((a + b).conj(), a.conj() + b.conj());
        MultiPoly r = rng.poly(V, all_indices(V), 4, 4, false);
        EXPECT_EQ(r.conj(), r);
    }
}

namespace {

using Op = std::function<LambdaSeries(const LambdaSeries&)>;

Op times_lambda(const MultiPoly& m) {
    return [m](const LambdaSeries& s) { return (LambdaSeries(m, s.order()) * s).shift(); };
}

}  // namespace

TEST(InvertUnipotent, ZeroOperatorGivesIdentity) {
    Op zero = [](const LambdaSeries& s) { return LambdaSeries(s.vars(), s.order()); };
    auto inv = invert_unipotent<LambdaSeries>(zero, 4);
    LambdaSeries a = SampleRng(1).series(V, all_indices(V), 3, 4, 4);
    EXPECT_EQ(inv(a), a);
}

TEST(InvertUnipotent, GeometricSeries) {
    auto inv = invert_unipotent<LambdaSeries>(times_lambda(x("q1")), 2);
    LambdaSeries want = LambdaSeries::from_coeffs({c(1), x("q1"), x("q1") * x("q1")});
    EXPECT_EQ(inv(LambdaSeries::constant(V, 2, 1)), want);
}

TEST(InvertUnipotent, InverseComposedWithOneMinusAIsIdentity) {
    SampleRng rng(31);
    MultiPoly m = x("q1") * x("p2") + GaussianRational::i() * x("q2");
    Op A = [&](const LambdaSeries& s) {
        return times_lambda(m)(s) + s.map([](const MultiPoly& p) { return p.derivative("p1"); }).shift();
    };
    auto inv = invert_unipotent<LambdaSeries>(A, 4);
    for (int k = 0; k < 20; ++k) {
        LambdaSeries a = rng.series(V, all_indices(V), 3, 4, 4);
        EXPECT_EQ(inv(a - A(a)), a);
        LambdaSeries y = inv(a);
        EXPECT_EQ(y - A(y), a);
    }
}

TEST(InvertUnipotent, NonRaisingOperatorViolatesContract) {
    Op bad = [](const LambdaSeries& s) { return LambdaSeries(MultiPoly::var(s.vars(), "q1"), s.order()) * s; };
    auto inv = invert_unipotent<LambdaSeries>(bad, 3);
    EXPECT_THROW(inv(LambdaSeries::constant(V, 3, 1)), ContractViolation);
}
