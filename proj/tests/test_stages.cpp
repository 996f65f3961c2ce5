#include <gtest/gtest.h>

#include "qk/stages.hpp"

using namespace qk;

namespace {

bool all_pass(const CheckList& cs, std::string* why = nullptr) {
    for (const auto& c : cs)
        if (c.required && !c.passed) {
            if (why) *why = c.name + ": " + c.witness;
            return false;
        }
    return true;
}

StageConfig split(const ReductionContext& ctx, std::vector<int> sub, std::vector<int> comp) {
    return {ctx.lie(), std::move(sub), std::move(comp)};
}

LambdaSeries svar(const ReductionContext& ctx, const std::string& n) {
    return ctx.series(MultiPoly::var(ctx.vars(), n));
}

const GaussianRational kI = GaussianRational::i();

}  // namespace

TEST(StageConfig, AcceptsAbelianPartitions) {
    auto lie = LieAlgebraData::abelian(2);
    EXPECT_NO_THROW((StageConfig{lie, {0}, {1}}.validate()));
    EXPECT_NO_THROW((StageConfig{lie, {1}, {0}}.validate()));
    EXPECT_NO_THROW((StageConfig{lie, {0, 1}, {}}.validate()));
}

TEST(StageConfig, RejectsBadPartitions) {
    auto lie = LieAlgebraData::abelian(2);
    EXPECT_THROW((StageConfig{lie, {0}, {2}}.validate()), StageConfigError);
    EXPECT_THROW((StageConfig{lie, {0}, {0}}.validate()), StageConfigError);
    EXPECT_THROW((StageConfig{lie, {0}, {}}.validate()), StageConfigError);
    EXPECT_THROW((StageConfig{lie, {}, {0, 1}}.validate()), StageConfigError);
}

TEST(StageConfig, HeisenbergCenterHasNoInvariantComplement) {
    auto h = LieAlgebraData::heisenberg();
    try {
        StageConfig{h, {2}, {0, 1}}.validate();
        FAIL() << "accepted";
    } catch (const StageConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("not invariant"), std::string::npos) << e.what();
    }
    // span(P) is not an ideal
    EXPECT_THROW((StageConfig{h, {0}, {1, 2}}.validate()), StageConfigError);
}

TEST(StageConfig, DirectSumWithHeisenbergIsAccepted) {
    LieAlgebraData g = LieAlgebraData::abelian(4);
    g.set_bracket(0, 1, {0, 0, 1, 0});
    EXPECT_NO_THROW((StageConfig{g, {0, 1, 2}, {3}}.validate()));
    EXPECT_NO_THROW((StageConfig{g, {3}, {0, 1, 2}}.validate()));
    const auto sub = restrict_lie(g, {0, 1, 2});
    EXPECT_EQ(sub.c[2][0][1], 1);
    EXPECT_EQ(sub.c[2][1][0], -1);
}

TEST(RestrictMomentumMap, SelectsComponents) {
    auto ctx = scenario_s1(4);
    auto Jq1 = restrict_momentum_map(ctx.Jq(), split(ctx, {0}, {1}));
    ASSERT_EQ(Jq1.components.size(), 1u);
    EXPECT_EQ(Jq1.components[0], svar(ctx, "p1"));
    EXPECT_EQ(Jq1.lie.dim, 1);
    auto all = restrict_momentum_map(ctx.Jq(), split(ctx, {0, 1}, {}));
    EXPECT_EQ(all.components, ctx.Jq().components);
}

TEST(StagePipeline, SecondMomentumMapOnS1) {
    auto ctx = scenario_s1(4);
    auto pipe = StagePipeline::build(ctx, split(ctx, {0}, {1}));
    ASSERT_TRUE(pipe.ctx2);
    ASSERT_EQ(pipe.ctx2->Jq().components.size(), 1u);
    EXPECT_EQ(pipe.ctx2->Jq().components[0], svar(ctx, "p2"));
    const std::vector<int> red1{1, 2, 4, 5};  // q2 q3 p2 p3
    EXPECT_EQ(pipe.ctx1->reduced_vars(), red1);
    EXPECT_EQ(pipe.ctx2->reduced_vars(), ctx.reduced_vars());
    std::string why;
    StageCheckOptions opt;
    opt.samples = 10;
    EXPECT_TRUE(all_pass(check_stage_momentum_maps(pipe, opt), &why)) << why;
}

TEST(StagePipeline, AlphaShiftMovesSecondMomentumMap) {
    const GaussianRational c1(mpq_class(1, 2)), c2(-3);
    auto ctx = alpha_shifted_context(scenario_s1(4), {kI * c1, kI * c2});
    auto pipe = StagePipeline::build(ctx, split(ctx, {0}, {1}));
    LambdaSeries want = svar(ctx, "p2");
    LambdaSeries shift(ctx.vars(), ctx.order());
    shift.set(1, MultiPoly::constant(ctx.vars(), kI * c2));
    EXPECT_EQ(pipe.ctx2->Jq().components[0], want + shift);
    std::string why;
    StageCheckOptions opt;
    opt.samples = 8;
    EXPECT_TRUE(all_pass(check_stage_momentum_maps(pipe, opt), &why)) << why;
    EXPECT_THROW(alpha_shifted_context(ctx, {kI}), DimensionError);
}

TEST(StagePipeline, CompatibleProlongations) {
    auto ctx = scenario_s1(4);
    StageCheckOptions opt;
    opt.samples = 20;
    for (const auto& cfg : {split(ctx, {0}, {1}), split(ctx, {1}, {0})}) {
        auto cs = check_compatible_prolongations(StagePipeline::build(ctx, cfg), opt);
        std::string why;
        EXPECT_TRUE(all_pass(cs, &why)) << why;
        EXPECT_EQ(cs.size(), 9u);
    }
}

TEST(StagePipeline, DegenerateStageCollapses) {
    auto ctx = scenario_s1(3);
    auto pipe = StagePipeline::build(ctx, split(ctx, {0, 1}, {}));
    EXPECT_FALSE(pipe.ctx2);
    StageCheckOptions opt;
    opt.samples = 5;
    auto cs = check_compatible_prolongations(pipe, opt);
    std::string why;
    EXPECT_TRUE(all_pass(cs, &why)) << why;
    EXPECT_EQ(cs.size(), 3u);
    EXPECT_TRUE(all_pass(check_stage_equality(pipe, opt), &why)) << why;
}

TEST(StagePipeline, RejectsMismatchedConfig) {
    auto ctx = scenario_s1(2);
    EXPECT_THROW(StagePipeline::build(ctx, StageConfig{LieAlgebraData::abelian(3), {0}, {1, 2}}), StageConfigError);
    EXPECT_THROW(StagePipeline::build(ctx, split(ctx, {0}, {5})), StageConfigError);
}

TEST(StageEquality, UnitAndHandValue) {
    auto ctx = scenario_s1(4);
    auto pipe = StagePipeline::build(ctx, split(ctx, {0}, {1}));
    const LambdaSeries one = LambdaSeries::constant(ctx.vars(), 4, GaussianRational(1));
    const LambdaSeries q = svar(ctx, "q3"), p = svar(ctx, "p3");
    EXPECT_EQ(two_stage_reduce(one, p * p, pipe), p * p);
    EXPECT_EQ(two_stage_reduce(q, p, pipe), reduced_star(q, p, ctx));
    EXPECT_EQ(two_stage_reduce(q * q, p * p, pipe), residual_weyl_star(q * q, p * p, ctx));
}

TEST(StageEquality, S1BothOrdersAndAlphaShift) {
    auto base = scenario_s1(4);
    const GaussianRational c1(mpq_class(2, 3)), c2(mpq_class(-1, 2));
    StageCheckOptions opt;
    opt.samples = 30;
    for (const auto& ctx : {base, alpha_shifted_context(base, {kI * c1, kI * c2})})
        for (const auto& cfg : {split(ctx, {0}, {1}), split(ctx, {1}, {0})}) {
            std::string why;
            EXPECT_TRUE(all_pass(check_stage_equality(StagePipeline::build(ctx, cfg), opt), &why)) << why;
        }
}

TEST(StageEquality, DetectsMismatchedOneStepProduct) {
    auto ctx = scenario_s1(3);
    auto pipe = StagePipeline::build(ctx, split(ctx, {0}, {1}));
    const auto sp = PhaseSpace::canonical(3);
    pipe.ctx = std::make_shared<const ReductionContext>(
        make_translation_context(std::make_shared<const StarProduct>(StarProduct::std_ordered(sp)), sp, {1, 2}, 3));
    StageCheckOptions opt;
    opt.samples = 5;
    auto cs = check_stage_equality(pipe, opt);
    EXPECT_FALSE(all_pass(cs));
    for (const auto& c : cs)
        if (c.name == "stage_star_equality") {
            EXPECT_FALSE(c.passed);
            EXPECT_NE(c.witness.find("lhs="), std::string::npos);
        }
}
