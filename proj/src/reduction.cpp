#include "qk/reduction.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace qk {

namespace {

bool uses_only(const LambdaSeries& f, const std::vector<int>& idx) {
    const std::set<int> ok(idx.begin(), idx.end());
    for (const auto& c : f.coeffs())
        for (const auto& [e, coef] : c.terms())
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0 && !ok.count(static_cast<int>(k))) return false;
    return true;
}

void require_reduced(const LambdaSeries& f, const ReductionContext& ctx, const char* what) {
    if (!ctx.in_reduced_algebra(f))
        throw ReductionError(std::string(what) + ": not in the reduced algebra: " + f.str());
}

const GaussianRational kMinusI = GaussianRational::frac(0, 1, -1, 1);

// i lambda Delta F = sum_i (r^i(F) p_{vert(i)} - r^i(F) * Jq_i), exact at every order.
LambdaSeries i_lambda_delta(const LambdaSeries& F, const CotangentSplit& split, const StarProduct& star,
                            const QuantumMomentumMap& Jq) {
    if (static_cast<int>(split.vertical.size()) != Jq.lie.dim)
        throw DimensionError("delta_star: " + std::to_string(split.vertical.size()) + " vertical directions for a " +
                             std::to_string(Jq.lie.dim) + "-dimensional momentum map");
    LambdaSeries out(F.vars(), F.order());
    for (int i = 0; i < Jq.lie.dim; ++i) {
        const LambdaSeries r = r_operator(F, i, split);
        if (r.is_zero()) continue;
        const LambdaSeries p(MultiPoly::var(F.vars(), (*F.vars())[split.vertical_p(i)]), F.order());
        out += r * p - star.eval(r, Jq.components[i]);
    }
    return out;
}

LambdaSeries divide_by_i_lambda(const LambdaSeries& x) {
    if (!x[0].is_zero()) throw ContractViolation("delta_star: lambda^0 remainder " + x[0].str());
    return kMinusI * x.unshift();
}

// Data of a context transported to its straightened coordinates, where the
// constraint functions become the constrained p's.
struct Straightened {
    std::shared_ptr<const StarProduct> star;
    QuantumMomentumMap Jq;
    CotangentSplit split;
};

Straightened straighten(const ReductionContext& ctx) {
    const GoodTube& tube = ctx.tube();
    Straightened s;
    s.star = std::make_shared<const StarProduct>(StarProduct::pullback(ctx.star_ptr(), tube.to_tube, tube.from_tube));
    s.Jq = ctx.Jq();
    for (auto& c : s.Jq.components) c = apply_substitution(c, tube.to_tube);
    s.split = CotangentSplit::from_translated(ctx.space().n(), ctx.translated());
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

LambdaSeries ReducedAlgebra::lift(const LambdaSeries& phi) const {
    return phi.map([this](const MultiPoly& c) { return change_vars(c, ambient_vars); });
}

LambdaSeries ReducedAlgebra::descend(const LambdaSeries& f) const {
    if (!uses_only(f, indices)) throw ReductionError("descend: not an invariant constraint function: " + f.str());
    return f.map([this](const MultiPoly& c) { return change_vars(c, vars); });
}

ReducedAlgebra reduced_algebra(const ReductionContext& ctx) {
    ReducedAlgebra r;
    r.ambient_vars = ctx.vars();
    r.indices = ctx.reduced_vars();
    std::vector<std::string> names;
    for (int i : r.indices) names.push_back((*ctx.vars())[i]);
    r.vars = make_vars(std::move(names));
    return r;
}

LambdaSeries reduced_poisson_bracket(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx) {
    require_reduced(phi, ctx, "reduced_poisson_bracket");
    require_reduced(psi, ctx, "reduced_poisson_bracket");
    LambdaSeries out = restriction(ctx.star().bracket(prolongation(phi, ctx), prolongation(psi, ctx)), ctx);
    require_reduced(out, ctx, "reduced_poisson_bracket result");
    return out;
}

LambdaSeries reduced_star(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx) {
    require_reduced(phi, ctx, "reduced_star");
    require_reduced(psi, ctx, "reduced_star");
    LambdaSeries out = quantum_restriction(ctx.star().eval(prolongation(phi, ctx), prolongation(psi, ctx)), ctx);
    require_reduced(out, ctx, "reduced_star result");
    return out;
}

StarProduct reduced_star_product(const ReductionContext& ctx) {
    auto keep = std::make_shared<const ReductionContext>(ctx);
    return StarProduct::custom(
        ctx.star().name() + "_red", ctx.vars(),
        [keep](const LambdaSeries& f, const LambdaSeries& g) { return reduced_star(f, g, *keep); },
        [keep](const LambdaSeries& f, const LambdaSeries& g) { return reduced_poisson_bracket(f, g, *keep); });
}

LambdaSeries residual_weyl_star(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx) {
    require_reduced(phi, ctx, "residual_weyl_star");
    require_reduced(psi, ctx, "residual_weyl_star");
    const int n = ctx.space().n();
    std::vector<int> qs;
    for (int i : ctx.reduced_vars())
        if (i < n) qs.push_back(i + 1);
    for (int i : ctx.reduced_vars())
        if (i >= n && std::find(qs.begin(), qs.end(), i - n + 1) == qs.end())
            throw std::invalid_argument("residual_weyl_star: residual variables are not canonical pairs");
    const int m = static_cast<int>(qs.size());
    if (2 * m != static_cast<int>(ctx.reduced_vars().size()))
        throw std::invalid_argument("residual_weyl_star: residual variables are not canonical pairs");

    const PhaseSpace small = PhaseSpace::canonical(m);
    const VarList& big = ctx.vars();
    Substitution up;
    for (int k = 1; k <= m; ++k) {
        up.emplace("q" + std::to_string(k), MultiPoly::var(big, "q" + std::to_string(qs[k - 1])));
        up.emplace("p" + std::to_string(k), MultiPoly::var(big, "p" + std::to_string(qs[k - 1])));
    }
    const auto to_small = [&](const LambdaSeries& f) {
        return f.map([&](const MultiPoly& c) {
            MultiPoly out(small.vars());
            for (const auto& [e, coef] : c.terms()) {
                Exponent se(small.vars()->size(), 0);
                for (int k = 1; k <= m; ++k) {
                    se[k - 1] = e[qs[k - 1] - 1];
                    se[m + k - 1] = e[n + qs[k - 1] - 1];
                }
                out.add_term(se, coef);
            }
            return out;
        });
    };
    const LambdaSeries prod = weyl_star(to_small(phi), to_small(psi), small);
    return prod.map([&](const MultiPoly& c) { return substitute(c, up, big); });
}

// ---------------------------------------------------------------------------

VarList tensor_vars(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("d_q" + std::to_string(i));
    return make_vars(std::move(names));
}

MultiPoly symbol_iso(const MultiPoly& T, int n) {
    if (static_cast<int>(T.nvars()) != 2 * n) throw DimensionError("symbol_iso: tensor over the wrong base");
    const VarList target = phase_vars(n);
    Substitution s;
    for (int i = 1; i <= n; ++i) {
        s.emplace("q" + std::to_string(i), MultiPoly::var(target, "q" + std::to_string(i)));
        s.emplace("d_q" + std::to_string(i), MultiPoly::var(target, "p" + std::to_string(i)));
    }
    return substitute(T, s, target);
}

MultiPoly symbol_iso_inverse(const MultiPoly& F, int n) {
    if (static_cast<int>(F.nvars()) != 2 * n) throw DimensionError("symbol_iso_inverse: wrong phase space");
    const VarList target = tensor_vars(n);
    Substitution s;
    for (int i = 1; i <= n; ++i) {
        s.emplace("q" + std::to_string(i), MultiPoly::var(target, "q" + std::to_string(i)));
        s.emplace("p" + std::to_string(i), MultiPoly::var(target, "d_q" + std::to_string(i)));
    }
    return substitute(F, s, target);
}

// ---------------------------------------------------------------------------

CotangentSplit CotangentSplit::from_translated(int n, const std::vector<int>& translated) {
    CotangentSplit s;
    s.n = n;
    s.vertical = translated;
    for (int i = 1; i <= n; ++i)
        if (std::find(translated.begin(), translated.end(), i) == translated.end()) s.horizontal.push_back(i);
    for (int a : translated)
        if (a < 1 || a > n) throw std::invalid_argument("cotangent split: index " + std::to_string(a) + " out of range");
    return s;
}

namespace {

int vertical_degree(const Exponent& e, const CotangentSplit& split) {
    int d = 0;
    for (std::size_t i = 0; i < split.vertical.size(); ++i) d += e[split.vertical_p(static_cast<int>(i))];
    return d;
}

}  // namespace

MultiPoly horizontal_part(const MultiPoly& F, const CotangentSplit& split) {
    MultiPoly out(F.vars());
    for (const auto& [e, c] : F.terms())
        if (vertical_degree(e, split) == 0) out.add_term(e, c);
    return out;
}

MultiPoly vertical_part(const MultiPoly& F, const CotangentSplit& split) { return F - horizontal_part(F, split); }

MultiPoly r_operator(const MultiPoly& F, int i, const CotangentSplit& split) {
    const int pv = split.vertical_p(i);
    MultiPoly out(F.vars());
    for (const auto& [e, c] : F.terms()) {
        const int D = vertical_degree(e, split);
        if (D == 0 || e[pv] == 0) continue;
        Exponent down = e;
        --down[pv];
        out.add_term(down, c * GaussianRational(mpq_class(e[pv], D)));
    }
    return out;
}

LambdaSeries horizontal_part(const LambdaSeries& F, const CotangentSplit& split) {
    return F.map([&](const MultiPoly& c) { return horizontal_part(c, split); });
}

LambdaSeries r_operator(const LambdaSeries& F, int i, const CotangentSplit& split) {
    return F.map([&](const MultiPoly& c) { return r_operator(c, i, split); });
}

LambdaSeries delta_star(const LambdaSeries& F, const CotangentSplit& split, const StarProduct& star,
                        const QuantumMomentumMap& Jq_kan) {
    return divide_by_i_lambda(i_lambda_delta(F, split, star, Jq_kan));
}

LambdaSeries delta_star(const LambdaSeries& F, const ReductionContext& ctx) {
    const Straightened s = straighten(ctx);
    const GoodTube& tube = ctx.tube();
    const LambdaSeries d = delta_star(apply_substitution(F, tube.to_tube), s.split, *s.star, s.Jq);
    return apply_substitution(d, tube.from_tube);
}

LambdaSeries delta_via_homotopy(const LambdaSeries& F, const ReductionContext& ctx) {
    const KoszulChain hF = classical_homotopy(chain_of(ctx.dim(), {}, F), ctx);
    return divide_by_i_lambda((koszul_boundary(hF, ctx) - quantum_koszul_boundary(hF, ctx)).at({}));
}

LambdaSeries knp_reduced_star(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx) {
    require_reduced(phi, ctx, "knp_reduced_star");
    require_reduced(psi, ctx, "knp_reduced_star");
    const Straightened s = straighten(ctx);
    const GoodTube& tube = ctx.tube();
    const LambdaSeries F = s.star->eval(apply_substitution(phi, tube.to_tube), apply_substitution(psi, tube.to_tube));
    std::function<LambdaSeries(const LambdaSeries&)> A = [&s](const LambdaSeries& x) {
        return i_lambda_delta(x, s.split, *s.star, s.Jq);
    };
    const LambdaSeries G = invert_unipotent<LambdaSeries>(A, ctx.order())(F);
    LambdaSeries out = apply_substitution(horizontal_part(G, s.split), tube.from_tube);
    require_reduced(out, ctx, "knp_reduced_star result");
    return out;
}

// ---------------------------------------------------------------------------

Substitution fiber_translation(const PhaseSpace& space, const std::vector<MultiPoly>& alpha) {
    const int n = space.n();
    if (static_cast<int>(alpha.size()) != n)
        throw DimensionError("fiber_translation: " + std::to_string(alpha.size()) + " components on T*R^" +
                             std::to_string(n));
    const VarList& v = space.vars();
    Substitution s;
    for (int a = 1; a <= n; ++a) {
        const MultiPoly& al = alpha[a - 1];
        if (!same_vars(al.vars(), v)) throw DimensionError("fiber_translation: one-form over another variable list");
        for (int i = 1; i <= n; ++i)
            if (al.depends_on(space.p(i)))
                throw std::invalid_argument("fiber_translation: component " + std::to_string(a) + " depends on p" +
                                            std::to_string(i));
        if (!al.is_zero()) s.emplace("p" + std::to_string(a), MultiPoly::var(v, "p" + std::to_string(a)) + al);
    }
    return s;
}

LambdaSeries fiber_translate(const std::vector<MultiPoly>& alpha, const LambdaSeries& f, const PhaseSpace& space) {
    return apply_substitution(f, fiber_translation(space, alpha));
}

StarProduct fiber_translate_star(std::shared_ptr<const StarProduct> base, const std::vector<MultiPoly>& alpha,
                                 const PhaseSpace& space) {
    std::vector<MultiPoly> minus;
    for (const auto& a : alpha) minus.push_back(-a);
    return StarProduct::pullback(std::move(base), fiber_translation(space, alpha), fiber_translation(space, minus));
}

ReductionContext make_translation_context(std::shared_ptr<const StarProduct> star, const PhaseSpace& space,
                                          const std::vector<int>& translated, int order) {
    const MomentumMap J = canonical_momentum_map(TranslationAction::make(space, translated));
    return ReductionContext::make(std::move(star), space, translated, J, QuantumMomentumMap::from_classical(J, order));
}

ReductionContext build_shifted_context(const ReductionContext& base, const mpq_class& b, int a, int c,
                                       const std::vector<mpq_class>& mu) {
    const PhaseSpace& space = base.space();
    const int n = space.n();
    if (c < 1 || c > n) throw std::invalid_argument("build_shifted_context: index c = " + std::to_string(c));
    const auto action = TranslationAction::make(space, base.translated());
    // Only a canonical base (J = p_a) is shifted.
    const MomentumMap Jkan = canonical_momentum_map(action);
    for (int al = 0; al < base.dim(); ++al)
        if (base.J().components[al] != Jkan.components[al])
            throw std::invalid_argument("build_shifted_context: base momentum map is not canonical");

    std::vector<MultiPoly> alpha(n, MultiPoly(space.vars()));
    if (a < 1 || a > n) throw std::invalid_argument("build_shifted_context: index a = " + std::to_string(a));
    alpha[a - 1] = GaussianRational(b) * MultiPoly::var(space.vars(), "q" + std::to_string(c));

    MomentumMap J = shift_momentum_map(magnetic_momentum_map(action, b, a, c), mu);
    QuantumMomentumMap Jq = base.Jq();
    for (auto& comp : Jq.components) comp = fiber_translate(alpha, comp, space);
    Jq = shift_momentum_map(Jq, mu);
    auto star = sgn(b) == 0 ? base.star_ptr()
                            : std::make_shared<const StarProduct>(fiber_translate_star(base.star_ptr(), alpha, space));
    return ReductionContext::make(std::move(star), space, base.translated(), std::move(J), std::move(Jq),
                                  base.ambient());
}

ReductionContext scenario_s1(int order) {
    const auto sp = PhaseSpace::canonical(3);
    return make_translation_context(std::make_shared<const StarProduct>(StarProduct::weyl(sp)), sp, {1, 2}, order);
}

ReductionContext scenario_s1p(int order) {
    const auto sp = PhaseSpace::canonical(2);
    return make_translation_context(std::make_shared<const StarProduct>(StarProduct::weyl(sp)), sp, {1}, order);
}

ReductionContext scenario_s2(int order, const mpq_class& b, const mpq_class& mu) {
    return build_shifted_context(scenario_s1p(order), b, 1, 2, {mu});
}

// ---------------------------------------------------------------------------

CheckList check_reduced_algebra(const ReductionContext& ctx, const ReductionCheckOptions& opt) {
    CheckList out;
    AxiomOptions ax;
    ax.samples = opt.samples;
    ax.max_degree = opt.max_degree;
    ax.seed = opt.seed;
    ax.allowed = ctx.reduced_vars();
    try {
        append_checks(out, check_star_axioms(reduced_star_product(ctx), ctx.order(), ax), "reduced_star");
    } catch (const ReductionError& e) {
        out.push_back({"reduced_star.closed", false, e.what()});
    }

    FirstFailure anti{"reduced_bracket.antisymmetry"};
    FirstFailure leib{"reduced_bracket.leibniz"};
    FirstFailure jac{"reduced_bracket.jacobi"};
    SampleRng rng(opt.seed + 1);
    const auto& red = ctx.reduced_vars();
    const auto br = [&ctx](const LambdaSeries& f, const LambdaSeries& g) { return reduced_poisson_bracket(f, g, ctx); };
    try {
        for (int s = 0; s < opt.samples; ++s) {
            const LambdaSeries f = ctx.series(rng.poly(ctx.vars(), red, opt.max_degree));
            const LambdaSeries g = ctx.series(rng.poly(ctx.vars(), red, opt.max_degree));
            const LambdaSeries k = ctx.series(rng.poly(ctx.vars(), red, opt.max_degree));
            const std::string in = "f=" + f.str() + " g=" + g.str() + " k=" + k.str();
            const LambdaSeries fg = br(f, g);
            anti.expect(fg == -br(g, f), in + " lhs=" + fg.str() + " rhs=" + (-br(g, f)).str());
            const LambdaSeries l = br(f, g * k), r = br(f, g) * k + g * br(f, k);
            leib.expect(l == r, in + " lhs=" + l.str() + " rhs=" + r.str());
            const LambdaSeries j = br(f, br(g, k)) + br(g, br(k, f)) + br(k, br(f, g));
            jac.expect(j.is_zero(), in + " lhs=" + j.str() + " rhs=0");
        }
    } catch (const ReductionError& e) {
        jac.fail(e.what());
    }
    out.push_back(anti.result);
    out.push_back(leib.result);
    out.push_back(jac.result);
    return out;
}

CheckList check_knp_equivalence(const ReductionContext& ctx, const ReductionCheckOptions& opt) {
    FirstFailure knp{"knp_equals_reduced_star"};
    FirstFailure delta{"delta_routes_agree"};
    FirstFailure split_id{"hv_decomposition"};
    FirstFailure proj{"hv_projections"};
    SampleRng rng(opt.seed);
    const auto& red = ctx.reduced_vars();
    const CotangentSplit split = CotangentSplit::from_translated(ctx.space().n(), ctx.translated());
    for (int s = 0; s < opt.samples; ++s) {
        const LambdaSeries phi = rng.series(ctx.vars(), red, opt.max_degree, ctx.order());
        const LambdaSeries psi = rng.series(ctx.vars(), red, opt.max_degree, ctx.order());
        try {
            const LambdaSeries a = knp_reduced_star(phi, psi, ctx);
            const LambdaSeries b = reduced_star(phi, psi, ctx);
            knp.expect(a == b, "phi=" + phi.str() + " psi=" + psi.str() + " lhs=" + a.str() + " rhs=" + b.str());
        } catch (const ReductionError& e) {
            knp.fail(e.what());
        }

        const LambdaSeries F = rng.series(ctx.vars(), ctx.ambient(), opt.max_degree, ctx.order());
        const LambdaSeries d1 = delta_star(F, ctx), d2 = delta_via_homotopy(F, ctx);
        delta.expect(d1 == d2, "F=" + F.str() + " lhs=" + d1.str() + " rhs=" + d2.str());

        const MultiPoly P = rng.poly(ctx.vars(), ctx.ambient(), opt.max_degree);
        MultiPoly sum = horizontal_part(P, split);
        for (std::size_t i = 0; i < split.vertical.size(); ++i) {
            const int k = static_cast<int>(i);
            sum += r_operator(P, k, split) * MultiPoly::var(P.vars(), (*P.vars())[split.vertical_p(k)]);
        }
        split_id.expect(sum == P, "F=" + P.str() + " lhs=" + sum.str() + " rhs=" + P.str());
        const MultiPoly h = horizontal_part(P, split), v = vertical_part(P, split);
        proj.expect(horizontal_part(h, split) == h && vertical_part(v, split) == v &&
                        horizontal_part(v, split).is_zero() && h + v == P,
                    "F=" + P.str() + " h=" + h.str() + " pv=" + v.str());
    }
    return {knp.result, delta.result, split_id.result, proj.result};
}

}  // namespace qk
