#include "qk/stages.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace qk {

namespace {

std::string label(const LieAlgebraData& lie, int a) {
    return a < static_cast<int>(lie.labels.size()) ? lie.labels[a] : "e" + std::to_string(a + 1);
}

template <class T>
std::vector<T> pick(const std::vector<T>& from, const std::vector<int>& idx) {
    std::vector<T> out;
    for (int i : idx) out.push_back(from.at(i));
    return out;
}

}  // namespace

void StageConfig::validate() const {
    const int k = lie.dim;
    if (sub.empty()) throw StageConfigError("stage split: g1 is empty");
    std::set<int> seen;
    for (const auto* part : {&sub, &complement})
        for (int i : *part) {
            if (i < 0 || i >= k)
                throw StageConfigError("stage split: index " + std::to_string(i) + " out of range for dim " +
                                       std::to_string(k));
            if (!seen.insert(i).second)
                throw StageConfigError("stage split: index " + std::to_string(i) + " listed twice");
        }
    if (static_cast<int>(seen.size()) != k)
        throw StageConfigError("stage split: g1 and g2 do not span g (" + std::to_string(seen.size()) + " of " +
                               std::to_string(k) + " basis vectors)");

    const std::set<int> g1(sub.begin(), sub.end()), g2(complement.begin(), complement.end());
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) {
                if (sgn(lie.c[c][a][b]) == 0) continue;
                if (g1.count(b) && !g1.count(c))
                    throw StageConfigError("stage split: g1 is not an ideal: [" + label(lie, a) + ", " +
                                           label(lie, b) + "] has a " + label(lie, c) + " component");
                if (g2.count(b) && !g2.count(c))
                    throw StageConfigError("stage split: complement is not invariant: [" + label(lie, a) + ", " +
                                           label(lie, b) + "] has a " + label(lie, c) + " component");
            }
}

LieAlgebraData restrict_lie(const LieAlgebraData& lie, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    LieAlgebraData out = LieAlgebraData::abelian(m);
    for (int i = 0; i < m; ++i) out.labels[i] = label(lie, idx[i]);
    for (int g = 0; g < m; ++g)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) out.c[g][a][b] = lie.c[idx[g]][idx[a]][idx[b]];
    return out;
}

QuantumMomentumMap restrict_momentum_map(const QuantumMomentumMap& Jq, const StageConfig& cfg) {
    return {restrict_lie(Jq.lie, cfg.sub), pick(Jq.components, cfg.sub)};
}

MomentumMap restrict_momentum_map(const MomentumMap& J, const StageConfig& cfg) {
    return {restrict_lie(J.lie, cfg.sub), pick(J.components, cfg.sub)};
}

ReductionContext alpha_shifted_context(const ReductionContext& ctx, const std::vector<GaussianRational>& alpha) {
    if (static_cast<int>(alpha.size()) != ctx.dim())
        throw DimensionError("alpha_shifted_context: " + std::to_string(alpha.size()) + " values for dim " +
                             std::to_string(ctx.dim()));
    QuantumMomentumMap Jq = ctx.Jq();
    for (int a = 0; a < ctx.dim(); ++a) {
        const LambdaSeries c = LambdaSeries::constant(ctx.vars(), ctx.order(), alpha[a]);
        Jq.components[a] = Jq.components[a] + c.shift();
    }
    return ReductionContext::make(ctx.star_ptr(), ctx.space(), ctx.translated(), ctx.J(), std::move(Jq), ctx.ambient());
}

QuantumMomentumMap induced_second_momentum_map(const ReductionContext& ctx, const ReductionContext& ctx1,
                                               const StageConfig& cfg) {
    QuantumMomentumMap Jq2{restrict_lie(ctx.lie(), cfg.complement), {}};
    for (int a : cfg.complement) {
        LambdaSeries c = quantum_restriction(prolongation(ctx.Jq().components[a], ctx1), ctx1);
        if (!ctx1.in_reduced_algebra(c))
            throw ReductionError("induced_second_momentum_map: i1**(Jq(" + label(ctx.lie(), a) +
                                 ")) is not invariant: " + c.str());
        Jq2.components.push_back(std::move(c));
    }
    return Jq2;
}

StagePipeline StagePipeline::build(const ReductionContext& ctx, StageConfig cfg) {
    if (cfg.lie.dim != ctx.dim()) throw StageConfigError("stage split: Lie algebra does not match the context");
    cfg.validate();
    StagePipeline p;
    p.ctx = std::make_shared<const ReductionContext>(ctx);
    p.ctx1 = std::make_shared<const ReductionContext>(
        ReductionContext::make(ctx.star_ptr(), ctx.space(), pick(ctx.translated(), cfg.sub),
                               restrict_momentum_map(ctx.J(), cfg), restrict_momentum_map(ctx.Jq(), cfg),
                               ctx.ambient()));
    p.star_red1 = std::make_shared<const StarProduct>(reduced_star_product(*p.ctx1));
    if (!cfg.degenerate()) {
        QuantumMomentumMap Jq2 = induced_second_momentum_map(ctx, *p.ctx1, cfg);
        MomentumMap J2 = Jq2.classical();
        p.ctx2 = std::make_shared<const ReductionContext>(
            ReductionContext::make(p.star_red1, ctx.space(), pick(ctx.translated(), cfg.complement), std::move(J2),
                                   std::move(Jq2), p.ctx1->reduced_vars()));
    }
    p.cfg = std::move(cfg);
    return p;
}

LambdaSeries two_stage_reduce(const LambdaSeries& phi, const LambdaSeries& psi, const StagePipeline& pipe) {
    return pipe.ctx2 ? reduced_star(phi, psi, *pipe.ctx2) : reduced_star(phi, psi, *pipe.ctx1);
}

// ---------------------------------------------------------------------------

CheckList check_stage_equality(const StagePipeline& pipe, const StageCheckOptions& opt) {
    FirstFailure star{"stage_star_equality"};
    FirstFailure bracket{"stage_bracket_equality"};
    FirstFailure unit{"stage_unit"};
    const ReductionContext& ctx = *pipe.ctx;
    const ReductionContext& last = pipe.ctx2 ? *pipe.ctx2 : *pipe.ctx1;
    SampleRng rng(opt.seed);
    const LambdaSeries one = LambdaSeries::constant(ctx.vars(), ctx.order(), GaussianRational(1));
    try {
        for (int s = 0; s < opt.samples; ++s) {
            const LambdaSeries phi = rng.series(ctx.vars(), ctx.reduced_vars(), opt.max_degree, ctx.order());
            const LambdaSeries psi = rng.series(ctx.vars(), ctx.reduced_vars(), opt.max_degree, ctx.order());
            const std::string in = "phi=" + phi.str() + " psi=" + psi.str();
            const LambdaSeries two = two_stage_reduce(phi, psi, pipe), one_step = reduced_star(phi, psi, ctx);
            star.expect(two == one_step, in + " lhs=" + two.str() + " rhs=" + one_step.str());
            const LambdaSeries b2 = reduced_poisson_bracket(phi, psi, last), b1 = reduced_poisson_bracket(phi, psi, ctx);
            bracket.expect(b2 == b1, in + " lhs=" + b2.str() + " rhs=" + b1.str());
            if (s < 3) {
                const LambdaSeries u = two_stage_reduce(one, psi, pipe);
                unit.expect(u == psi, "psi=" + psi.str() + " lhs=" + u.str() + " rhs=" + psi.str());
            }
        }
    } catch (const ReductionError& e) {
        star.fail(e.what());
    }
    return {bracket.result, star.result, unit.result};
}

CheckList check_compatible_prolongations(const StagePipeline& pipe, const StageCheckOptions& opt) {
    const ReductionContext& ctx = *pipe.ctx;
    const ReductionContext& ctx1 = *pipe.ctx1;
    SampleRng rng(opt.seed + 7);
    const int d = opt.max_degree;
    const int L = ctx.order();
    const auto sample = [&](const std::vector<int>& vars) { return rng.series(ctx.vars(), vars, d, L); };
    const auto fail = [](FirstFailure& ff, const LambdaSeries& x, const LambdaSeries& lhs, const LambdaSeries& rhs) {
        ff.fail("f=" + x.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());
    };

    FirstFailure fact{"prol_factorization"};
    FirstFailure collapse{"restriction_prolongation"};
    FirstFailure j_comp{"j_lemma_composition"};
    for (int s = 0; s < opt.samples; ++s) {
        // prol = prol1 i1* prol
        const LambdaSeries c = sample(ctx.constraint_vars());
        const LambdaSeries lhs = prolongation(c, ctx);
        const LambdaSeries rhs = prolongation(restriction(prolongation(c, ctx), ctx1), ctx1);
        if (lhs != rhs) fail(fact, c, lhs, rhs);
        const LambdaSeries back = restriction(prolongation(c, ctx), ctx);
        if (back != c) fail(collapse, c, back, c);
        // j** i1** = i** with j** = i** prol1
        const LambdaSeries f = sample(ctx.ambient());
        const LambdaSeries jl = quantum_restriction(prolongation(quantum_restriction(f, ctx1), ctx1), ctx);
        const LambdaSeries jr = quantum_restriction(f, ctx);
        if (jl != jr) fail(j_comp, f, jl, jr);
    }
    if (!pipe.ctx2) return {collapse.result, fact.result, j_comp.result};

    const ReductionContext& ctx2 = *pipe.ctx2;
    FirstFailure item1{"prol2_item_i"};
    FirstFailure item2{"prol2_item_ii"};
    FirstFailure item3{"prol2_item_iii"};
    FirstFailure item4{"prol2_item_iv"};
    FirstFailure j_second{"j_lemma_second_stage"};
    FirstFailure i2{"second_quantum_restriction_matches"};
    try {
        for (int s = 0; s < opt.samples; ++s) {
            // (i) pi1* prol2 = i1* prol
            const LambdaSeries c2 = sample(ctx2.constraint_vars());
            const LambdaSeries p2 = prolongation(c2, ctx2);
            const LambdaSeries r1 = restriction(prolongation(c2, ctx), ctx1);
            if (p2 != r1) fail(item1, c2, p2, r1);
            // (iii) h prol1 prol2 = 0
            const LambdaSeries lifted = prolongation(p2, ctx1);
            const KoszulChain h = classical_homotopy(chain_of(ctx.dim(), {}, lifted), ctx);
            if (!h.is_zero()) item3.fail("f=" + c2.str() + " lhs=" + to_string(h) + " rhs=0");
            // (iv) i* prol1 prol2 = i** prol1 prol2
            const LambdaSeries a = restriction(lifted, ctx), b = quantum_restriction(lifted, ctx);
            if (a != b) fail(item4, c2, a, b);

            // (ii) prol1 prol2 = prol on the reduced algebra
            const LambdaSeries phi = sample(ctx.reduced_vars());
            const LambdaSeries two = prolongation(prolongation(phi, ctx2), ctx1), one = prolongation(phi, ctx);
            if (two != one) fail(item2, phi, two, one);

            // j* pi1* prol2 i2** = j** pi1* and i2** = i** on the first reduced algebra
            const LambdaSeries psi = sample(ctx1.reduced_vars());
            const LambdaSeries q2 = quantum_restriction(psi, ctx2);
            const LambdaSeries jl = restriction(prolongation(prolongation(q2, ctx2), ctx1), ctx);
            const LambdaSeries jr = quantum_restriction(prolongation(psi, ctx1), ctx);
            if (jl != jr) fail(j_second, psi, jl, jr);
            const LambdaSeries qq = quantum_restriction(psi, ctx);
            if (q2 != qq) fail(i2, psi, q2, qq);
        }
    } catch (const ReductionError& e) {
        item1.fail(e.what());
    }
    return {collapse.result, fact.result, j_comp.result, item1.result, item2.result, item3.result,
            item4.result, j_second.result, i2.result};
}

CheckList check_stage_momentum_maps(const StagePipeline& pipe, const StageCheckOptions& opt) {
    CheckList out;
    const ReductionContext& ctx1 = *pipe.ctx1;
    MomentumCheckOptions mo;
    mo.samples = opt.samples;
    mo.max_degree = opt.max_degree;
    mo.seed = opt.seed;
    mo.allowed = ctx1.ambient();
    append_checks(out, check_quantum_momentum_map(ctx1.star(), ctx1.Jq(), mo), "stage1");
    if (pipe.ctx2) {
        mo.allowed = ctx1.reduced_vars();
        try {
            append_checks(out, check_quantum_momentum_map(*pipe.star_red1, pipe.ctx2->Jq(), mo), "stage2");
        } catch (const ReductionError& e) {
            out.push_back({"stage2.closed", false, e.what()});
        }
        FirstFailure cls{"stage2.classical_part"};
        for (int a = 0; a < pipe.ctx2->dim(); ++a) {
            const LambdaSeries& c = pipe.ctx2->Jq().components[a];
            const MultiPoly& want = pipe.ctx->J().components[pipe.cfg.complement[a]];
            cls.expect(c[0] == want, "component " + std::to_string(a + 1) + " lhs=" + c[0].str() + " rhs=" + want.str());
        }
        out.push_back(cls.result);
    }

    // *_red1 commutes with the residual translations d/dq_a, a in the complement.
    FirstFailure inv{"red1_translation_invariance"};
    SampleRng rng(opt.seed + 3);
    const auto& red1 = ctx1.reduced_vars();
    for (int s = 0; s < opt.samples; ++s) {
        const LambdaSeries f = rng.series(ctx1.vars(), red1, opt.max_degree, ctx1.order());
        const LambdaSeries g = rng.series(ctx1.vars(), red1, opt.max_degree, ctx1.order());
        for (int a : pipe.cfg.complement) {
            const int q = pipe.ctx->space().q(pipe.ctx->translated()[a]);
            const auto D = [q](const LambdaSeries& x) {
                return x.map([q](const MultiPoly& c) { return c.derivative(q); });
            };
            const LambdaSeries lhs = D(pipe.star_red1->eval(f, g));
            const LambdaSeries rhs = pipe.star_red1->eval(D(f), g) + pipe.star_red1->eval(f, D(g));
            inv.expect(lhs == rhs, "f=" + f.str() + " g=" + g.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());
        }
    }
    out.push_back(inv.result);
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return out;
}

}  // namespace qk
