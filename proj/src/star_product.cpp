#include "qk/star_product.hpp"

#include "qk/random.hpp"

namespace qk {

LambdaSeries apply_substitution(const LambdaSeries& f, const Substitution& s) {
    return f.map([&](const MultiPoly& c) { return substitute(c, s, f.vars()); });
}

MultiPoly LinearDiffOp::apply(const MultiPoly& f) const {
    MultiPoly out(f.vars());
    for (const auto& [v, c] : terms) out += c * f.derivative(v);
    return out;
}

StarProduct StarProduct::weyl(const PhaseSpace& space) {
    StarProduct s;
    s.kind_ = Kind::Weyl;
    s.name_ = "weyl";
    s.vars_ = space.vars();
    s.space_ = space;
    const auto& winv = space.omega_inv();
    const GaussianRational minus_half_i = GaussianRational::frac(0, 1, -1, 2);
    for (std::size_t r = 0; r < winv.size(); ++r)
        for (std::size_t t = 0; t < winv.size(); ++t)
            if (sgn(winv[r][t]) != 0)
                s.pairs_.push_back({minus_half_i * GaussianRational(winv[r][t]),
                                    {{{static_cast<int>(r), 1}}},
                                    {{{static_cast<int>(t), 1}}}});
    return s;
}

StarProduct StarProduct::wick(const PhaseSpace& space) {
    StarProduct s;
    s.kind_ = Kind::Wick;
    s.name_ = "wick";
    s.vars_ = space.vars();
    s.space_ = space;
    const GaussianRational half(mpq_class(1, 2));
    const GaussianRational half_i = GaussianRational::frac(0, 1, 1, 2);
    for (int k = 1; k <= space.n(); ++k) {
        // d_z = (d_q - i d_p)/2, d_zbar = (d_q + i d_p)/2
        LinearDiffOp dz{{{space.q(k), half}, {space.p(k), -half_i}}};
        LinearDiffOp dzbar{{{space.q(k), half}, {space.p(k), half_i}}};
        s.pairs_.push_back({GaussianRational(2), dz, dzbar});
    }
    return s;
}

StarProduct StarProduct::std_ordered(const PhaseSpace& space) {
    StarProduct s;
    s.kind_ = Kind::StdOrdered;
    s.name_ = "std";
    s.vars_ = space.vars();
    s.space_ = space;
    const GaussianRational one_over_i = GaussianRational::i().inverse();
    for (int k = 1; k <= space.n(); ++k)
        s.pairs_.push_back({one_over_i, {{{space.p(k), 1}}}, {{{space.q(k), 1}}}});
    return s;
}

StarProduct StarProduct::pullback(std::shared_ptr<const StarProduct> base, Substitution fwd, Substitution inv) {
    const VarList& vars = base->vars();
    for (const auto& name : *vars) {
        MultiPoly x = MultiPoly::var(vars, name);
        if (substitute(substitute(x, inv, vars), fwd, vars) != x ||
            substitute(substitute(x, fwd, vars), inv, vars) != x)
            throw NotInvertible("pullback: substitutions are not mutually inverse on '" + name + "'");
    }
    StarProduct s;
    s.kind_ = Kind::Pullback;
    s.name_ = "pullback(" + base->name() + ")";
    s.vars_ = vars;
    s.base_ = std::move(base);
    s.fwd_ = std::move(fwd);
    s.inv_ = std::move(inv);
    return s;
}

StarProduct StarProduct::custom(std::string name, VarList vars, EvalFn eval, EvalFn bracket) {
    StarProduct s;
    s.kind_ = Kind::Custom;
    s.name_ = std::move(name);
    s.vars_ = std::move(vars);
    s.custom_eval_ = std::move(eval);
    s.custom_bracket_ = std::move(bracket);
    return s;
}

// lambda^r coefficient: sum over multisets {j_1..j_r} of pairs of
// prod_j c_j^{a_j}/a_j! * (prod L_j^{a_j} f)(prod R_j^{a_j} g).
LambdaSeries StarProduct::eval_bidiff(const MultiPoly& f, const MultiPoly& g, int order) const {
    LambdaSeries out(f.vars(), order);
    std::vector<MultiPoly> acc(order + 1, MultiPoly(f.vars()));
    std::vector<int> counts(pairs_.size(), 0);
    std::function<void(std::size_t, int, const MultiPoly&, const MultiPoly&, const GaussianRational&)> rec =
        [&](std::size_t start, int r, const MultiPoly& lf, const MultiPoly& rg, const GaussianRational& c) {
            acc[r] += c * (lf * rg);
            if (r == order) return;
            for (std::size_t j = start; j < pairs_.size(); ++j) {
                MultiPoly lf2 = pairs_[j].left.apply(lf);
                if (lf2.is_zero()) continue;
                MultiPoly rg2 = pairs_[j].right.apply(rg);
                if (rg2.is_zero()) continue;
                ++counts[j];
                rec(j, r + 1, lf2, rg2, c * pairs_[j].c / GaussianRational(counts[j]));
                --counts[j];
            }
        };
    if (!f.is_zero() && !g.is_zero()) rec(0, 0, f, g, GaussianRational(1));
    for (int r = 0; r <= order; ++r) out.set(r, std::move(acc[r]));
    return out;
}

LambdaSeries StarProduct::eval(const MultiPoly& f, const MultiPoly& g, int order) const {
    return eval(LambdaSeries(f, order), LambdaSeries(g, order));
}

LambdaSeries StarProduct::eval(const LambdaSeries& f, const LambdaSeries& g) const {
    if (!same_vars(f.vars(), vars_) || !same_vars(g.vars(), vars_))
        throw DimensionError("star product: variables do not match");
    if (f.order() != g.order()) throw DimensionError("star product: truncation orders differ");
    const int L = f.order();
    switch (kind_) {
        case Kind::Pullback: {
            LambdaSeries r = base_->eval(apply_substitution(f, inv_), apply_substitution(g, inv_));
            return apply_substitution(r, fwd_);
        }
        case Kind::Custom:
            return custom_eval_(f, g);
        default:
            break;
    }
    LambdaSeries out(vars_, L);
    for (int a = 0; a <= L; ++a) {
        if (f[a].is_zero()) continue;
        for (int b = 0; a + b <= L; ++b) {
            if (g[b].is_zero()) continue;
            LambdaSeries part = eval_bidiff(f[a], g[b], L - a - b);
            for (int r = 0; r <= L - a - b; ++r) out.set(a + b + r, out[a + b + r] + part[r]);
        }
    }
    return out;
}

LambdaSeries StarProduct::bracket(const LambdaSeries& f, const LambdaSeries& g) const {
    switch (kind_) {
        case Kind::Pullback:
            return apply_substitution(base_->bracket(apply_substitution(f, inv_), apply_substitution(g, inv_)),
                                      fwd_);
        case Kind::Custom:
            return custom_bracket_(f, g);
        default:
            return space_->bracket(f, g);
    }
}

LambdaSeries weyl_star(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space) {
    return StarProduct::weyl(space).eval(f, g);
}

LambdaSeries wick_star(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space) {
    return StarProduct::wick(space).eval(f, g);
}

LambdaSeries std_star(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space) {
    return StarProduct::std_ordered(space).eval(f, g);
}

StarProduct pullback_star(std::shared_ptr<const StarProduct> base, Substitution fwd, Substitution inv) {
    return StarProduct::pullback(std::move(base), std::move(fwd), std::move(inv));
}

MultiPoly wick_z(const PhaseSpace& space, int k) {
    const auto& v = space.vars();
    return MultiPoly::var(v, (*v)[space.q(k)]) + GaussianRational::i() * MultiPoly::var(v, (*v)[space.p(k)]);
}

MultiPoly wick_zbar(const PhaseSpace& space, int k) {
    return wick_z(space, k).conj();
}


CheckList check_star_axioms(const StarProduct& star, int order, const AxiomOptions& opt) {
    const VarList& vars = star.vars();
    const std::vector<int> allowed = opt.allowed.empty() ? all_indices(vars) : opt.allowed;
    SampleRng rng(opt.seed);

    FirstFailure assoc{"associativity"};
    FirstFailure zeroth{"lambda0_product"};
    FirstFailure first{"lambda1_commutator"};
    FirstFailure unit{"unit"};
    FirstFailure constants{"constants"};
    FirstFailure herm{"hermitian", false};

    const LambdaSeries one = LambdaSeries::constant(vars, order, 1);
    const GaussianRational I = GaussianRational::i();

    for (int s = 0; s < opt.samples; ++s) {
        LambdaSeries f = rng.series(vars, allowed, opt.max_degree, order);
        LambdaSeries g = rng.series(vars, allowed, opt.max_degree, order);
        LambdaSeries h = rng.series(vars, allowed, opt.max_degree, order);
        const std::string in = "f=" + f.str() + " g=" + g.str();

        LambdaSeries fg = star.eval(f, g);
        LambdaSeries lhs = star.eval(fg, h);
        LambdaSeries rhs = star.eval(f, star.eval(g, h));
        if (lhs != rhs) assoc.fail(in + " h=" + h.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());

        MultiPoly prod = f[0] * g[0];
        if (fg[0] != prod) zeroth.fail(in + " lhs=" + fg[0].str() + " rhs=" + prod.str());

        if (order >= 1) {
            LambdaSeries comm = fg - star.eval(g, f);
            MultiPoly want = I * star.bracket(f, g)[0];
            if (comm[1] != want) first.fail(in + " lhs=" + comm[1].str() + " rhs=" + want.str());
        }

        if (star.eval(one, f) != f || star.eval(f, one) != f) unit.fail("f=" + f.str());

        GaussianRational a = rng.coefficient(true), b = rng.coefficient(true);
        LambdaSeries ca = LambdaSeries::constant(vars, order, a), cb = LambdaSeries::constant(vars, order, b);
        LambdaSeries cab = star.eval(ca, cb);
        if (cab != LambdaSeries::constant(vars, order, a * b))
            constants.fail("a=" + a.str() + " b=" + b.str() + " lhs=" + cab.str());

        LambdaSeries hl = fg.conj();
        LambdaSeries hr = star.eval(g.conj(), f.conj());
        if (hl != hr) herm.fail(in + " conj(f*g)=" + hl.str() + " conj(g)*conj(f)=" + hr.str());
    }
    return {assoc.result, constants.result, herm.result, zeroth.result, first.result, unit.result};
}

}  // namespace qk
