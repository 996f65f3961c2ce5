#include "qk/koszul.hpp"

#include <algorithm>
#include <set>

namespace qk {

std::pair<int, Wedge> interior(int alpha, const Wedge& w) {
    auto it = std::find(w.begin(), w.end(), alpha);
    if (it == w.end()) return {0, {}};
    const auto pos = it - w.begin();
    Wedge out = w;
    out.erase(out.begin() + pos);
    return {pos % 2 == 0 ? 1 : -1, std::move(out)};
}

std::pair<int, Wedge> wedge_front(int gamma, const Wedge& w) {
    auto it = std::lower_bound(w.begin(), w.end(), gamma);
    if (it != w.end() && *it == gamma) return {0, {}};
    const auto pos = it - w.begin();
    Wedge out = w;
    out.insert(out.begin() + pos, gamma);
    return {pos % 2 == 0 ? 1 : -1, std::move(out)};
}

std::vector<Wedge> wedges(int dim, int k) {
    std::vector<Wedge> out;
    if (k < 0 || k > dim) return out;
    Wedge w(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            out.push_back(w);
            return;
        }
        for (int i = start; i < dim; ++i) {
            w[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

int valuation(const KoszulChain& x) {
    int v = x.zero().order() + 1;
    for (const auto& [w, f] : x.terms()) v = std::min(v, f.valuation());
    return v;
}

std::string to_string(const KoszulChain& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [w, f] : x.terms()) {
        if (!out.empty()) out += " | ";
        out += "(" + f.str() + ")⊗";
        if (w.empty()) out += "1";
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "∧e" : "e") + std::to_string(w[i] + 1);
    }
    return out;
}

KoszulChain chain_of(int dim, const Wedge& w, const LambdaSeries& f) {
    KoszulChain x(dim, static_cast<int>(w.size()), LambdaSeries(f.vars(), f.order()));
    x.add(w, f);
    return x;
}

KoszulChain lambda0_part(const KoszulChain& x) {
    return x.map([](const LambdaSeries& f) { return LambdaSeries(f[0], f.order()); });
}

bool RepVector::is_zero() const {
    return std::all_of(x.begin(), x.end(), [](const GaussianRational& c) { return c.is_zero(); });
}

RepVector operator+(RepVector a, const RepVector& b) {
    if (a.x.size() != b.x.size()) throw DimensionError("RepVector size mismatch");
    for (std::size_t i = 0; i < a.x.size(); ++i) a.x[i] = a.x[i] + b.x[i];
    return a;
}

RepVector operator-(RepVector a, const RepVector& b) {
    if (a.x.size() != b.x.size()) throw DimensionError("RepVector size mismatch");
    for (std::size_t i = 0; i < a.x.size(); ++i) a.x[i] = a.x[i] - b.x[i];
    return a;
}

RepVector operator*(const GaussianRational& c, RepVector a) {
    for (auto& v : a.x) v = c * v;
    return a;
}

Representation<RepVector> matrix_representation(const LieAlgebraData& lie, const std::vector<RationalMatrix>& mats) {
    if (static_cast<int>(mats.size()) != lie.dim) throw DimensionError("matrix_representation: one matrix per basis vector");
    const std::size_t n = mats.empty() ? 0 : mats[0].size();
    for (const auto& m : mats) {
        if (m.size() != n) throw DimensionError("matrix_representation: matrices of different size");
        for (const auto& row : m)
            if (row.size() != n) throw DimensionError("matrix_representation: matrices must be square");
    }
    Representation<RepVector> rho;
    rho.lie = lie;
    rho.act = [mats](int a, const RepVector& v) {
        const auto& m = mats.at(a);
        RepVector out{std::vector<GaussianRational>(v.x.size())};
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                if (sgn(m[i][j]) != 0) out.x[i] = out.x[i] + GaussianRational(m[i][j]) * v.x[j];
        return out;
    };
    for (std::size_t i = 0; i < n; ++i) {
        RepVector e{std::vector<GaussianRational>(n)};
        e.x[i] = GaussianRational(1);
        rho.probes.push_back(std::move(e));
    }
    return rho;
}

Representation<RepVector> adjoint_representation(const LieAlgebraData& lie) {
    std::vector<RationalMatrix> mats(lie.dim, RationalMatrix(lie.dim, std::vector<mpq_class>(lie.dim, 0)));
    for (int a = 0; a < lie.dim; ++a)
        for (int g = 0; g < lie.dim; ++g)
            for (int b = 0; b < lie.dim; ++b) mats[a][g][b] = lie.c[g][a][b];
    return matrix_representation(lie, mats);
}

// ---------------------------------------------------------------------------

namespace {

std::string name_of(const VarList& v, int idx) { return (*v)[idx]; }

bool uses_only(const MultiPoly& f, const std::vector<bool>& allowed) {
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && !allowed[i]) return false;
    return true;
}

bool series_uses_only(const LambdaSeries& f, const std::vector<int>& idx) {
    std::vector<bool> allowed(f.vars()->size(), false);
    for (int i : idx) allowed[i] = true;
    for (const auto& c : f.coeffs())
        if (!uses_only(c, allowed)) return false;
    return true;
}

}  // namespace

GoodTube GoodTube::make(const MomentumMap& J, const PhaseSpace& space, const std::vector<int>& translated) {
    if (J.components.size() != translated.size())
        throw DimensionError("good tube: one momentum component per translated coordinate");
    GoodTube t;
    const VarList& v = space.vars();
    for (int a : translated) {
        t.translated_q.push_back(space.q(a));
        t.constrained_p.push_back(space.p(a));
    }
    for (std::size_t al = 0; al < translated.size(); ++al) {
        const MultiPoly pa = MultiPoly::var(v, name_of(v, t.constrained_p[al]));
        MultiPoly g = change_vars(J.components[al], v) - pa;
        for (std::size_t b = 0; b < translated.size(); ++b)
            if (g.depends_on(t.constrained_p[b]) || g.depends_on(t.translated_q[b]))
                throw std::invalid_argument("good tube: J_" + std::to_string(al + 1) + " - " + name_of(v, t.constrained_p[al]) +
                                            " depends on a constrained or translated variable");
        const std::string p = name_of(v, t.constrained_p[al]);
        t.to_tube.emplace(p, pa - g);
        t.from_tube.emplace(p, pa + g);
        t.retraction.emplace(p, -g);
        t.offsets.push_back(std::move(g));
    }
    return t;
}

ReductionContext ReductionContext::make(std::shared_ptr<const StarProduct> star, const PhaseSpace& space,
                                        std::vector<int> translated, MomentumMap J, QuantumMomentumMap Jq,
                                        std::vector<int> ambient) {
    if (!same_vars(star->vars(), space.vars())) throw DimensionError("context: star product on other variables");
    if (Jq.components.size() != J.components.size()) throw DimensionError("context: J and Jq differ in length");
    if (J.components.empty()) throw std::invalid_argument("context: empty momentum map");
    for (std::size_t a = 0; a < J.components.size(); ++a)
        if (Jq.components[a][0] != J.components[a])
            throw std::invalid_argument("context: lambda^0 part of Jq_" + std::to_string(a + 1) + " differs from J");

    ReductionContext ctx;
    ctx.star_ = std::move(star);
    ctx.space_ = space;
    ctx.order_ = Jq.components[0].order();
    ctx.tube_ = GoodTube::make(J, space, translated);
    ctx.translated_ = std::move(translated);
    ctx.J_ = std::move(J);
    ctx.Jq_ = std::move(Jq);
    ctx.ambient_ = ambient.empty() ? all_indices(space.vars()) : std::move(ambient);
    std::sort(ctx.ambient_.begin(), ctx.ambient_.end());

    const std::set<int> cp(ctx.tube_.constrained_p.begin(), ctx.tube_.constrained_p.end());
    const std::set<int> tq(ctx.tube_.translated_q.begin(), ctx.tube_.translated_q.end());
    for (int i : ctx.ambient_) {
        if (cp.count(i)) continue;
        ctx.constraint_.push_back(i);
        if (!tq.count(i)) ctx.reduced_.push_back(i);
    }
    for (const auto& c : ctx.Jq_.components)
        if (!series_uses_only(c, ctx.ambient_)) throw std::invalid_argument("context: Jq leaves the ambient algebra");
    return ctx;
}

bool ReductionContext::in_constraint_algebra(const LambdaSeries& f) const { return series_uses_only(f, constraint_); }
bool ReductionContext::in_reduced_algebra(const LambdaSeries& f) const { return series_uses_only(f, reduced_); }

KoszulChain ReductionContext::zero_chain(int grade) const { return KoszulChain(dim(), grade, LambdaSeries(vars(), order_)); }

// ---------------------------------------------------------------------------

KoszulChain koszul_boundary(const KoszulChain& x, const MomentumMap& J) {
    if (x.grade() < 1) throw std::invalid_argument("koszul_boundary: grade " + std::to_string(x.grade()) + " chain");
    const LambdaSeries& z = x.zero();
    KoszulChain out(x.dim(), x.grade() - 1, z);
    for (const auto& [w, f] : x.terms())
        for (int a = 0; a < J.lie.dim; ++a) {
            auto [s, wa] = interior(a, w);
            if (s != 0) out.add(wa, f * LambdaSeries(J.components[a], z.order()), GaussianRational(s));
        }
    return out;
}

KoszulChain koszul_boundary(const KoszulChain& x, const ReductionContext& ctx) { return koszul_boundary(x, ctx.J()); }

KoszulChain quantum_koszul_boundary(const KoszulChain& x, const StarProduct& star, const QuantumMomentumMap& Jq) {
    if (x.grade() < 1)
        throw std::invalid_argument("quantum_koszul_boundary: grade " + std::to_string(x.grade()) + " chain");
    const auto& g = Jq.lie;
    const GaussianRational half_i = GaussianRational::frac(0, 1, 1, 2);
    KoszulChain out(x.dim(), x.grade() - 1, x.zero());
    for (const auto& [w, f] : x.terms()) {
        for (int a = 0; a < g.dim; ++a) {
            auto [s, wa] = interior(a, w);
            if (s != 0) out.add(wa, star.eval(f, Jq.components[a]), GaussianRational(s));
        }
        if (g.is_abelian()) continue;
        const LambdaSeries lf = f.shift();
        for (int b = 0; b < g.dim; ++b) {
            auto [sb, wb] = interior(b, w);
            if (sb == 0) continue;
            for (int a = 0; a < g.dim; ++a) {
                auto [sa, wab] = interior(a, wb);
                if (sa == 0) continue;
                for (int c = 0; c < g.dim; ++c) {
                    if (sgn(g.c[c][a][b]) == 0) continue;
                    auto [sc, wc] = wedge_front(c, wab);
                    if (sc != 0) out.add(wc, lf, half_i * GaussianRational(g.c[c][a][b] * (sa * sb * sc)));
                }
            }
        }
    }
    return out;
}

KoszulChain quantum_koszul_boundary(const KoszulChain& x, const ReductionContext& ctx) {
    return quantum_koszul_boundary(x, ctx.star(), ctx.Jq());
}

Representation<LambdaSeries> koszul_representation(const ReductionContext& ctx) {
    Representation<LambdaSeries> rho;
    rho.lie = ctx.lie();
    std::vector<LambdaSeries> J;
    for (const auto& c : ctx.J().components) J.push_back(ctx.series(c));
    rho.act = [J](int a, const LambdaSeries& f) { return f * J.at(a); };
    return rho;
}

LambdaSeries classical_homotopy_coefficient(const LambdaSeries& f, int alpha, int k, const ReductionContext& ctx) {
    const VarList& v = ctx.vars();
    const GoodTube& tube = ctx.tube();
    const VarList ext = extend_vars(v, {"t"});
    const MultiPoly t = MultiPoly::var(ext, "t");
    Substitution scale;
    for (int p : tube.constrained_p) scale.emplace(name_of(v, p), t * MultiPoly::var(ext, name_of(v, p)));
    Exponent tk(ext->size(), 0);
    tk.back() = k;
    const MultiPoly t_pow = MultiPoly::monomial(ext, tk, GaussianRational(1));
    const int pa = tube.constrained_p.at(alpha);

    return f.map([&](const MultiPoly& c) {
        if (c.is_zero()) return c;
        MultiPoly in_tube = substitute(c, tube.to_tube, v).derivative(pa);
        if (in_tube.is_zero()) return in_tube;
        MultiPoly integrand = substitute(in_tube, scale, ext) * t_pow;
        MultiPoly integrated = change_vars(t_integral(integrand, "t"), v);
        return substitute(integrated, tube.from_tube, v);
    });
}

KoszulChain classical_homotopy(const KoszulChain& x, const ReductionContext& ctx) {
    const int k = x.grade();
    if (k < 0) throw std::invalid_argument("classical_homotopy: negative grade");
    KoszulChain out = ctx.zero_chain(k + 1);
    for (const auto& [w, f] : x.terms())
        for (int a = 0; a < ctx.dim(); ++a) {
            auto [s, wa] = wedge_front(a, w);
            if (s != 0) out.add(wa, classical_homotopy_coefficient(f, a, k, ctx), GaussianRational(s));
        }
    return out;
}

LambdaSeries prolongation(const LambdaSeries& f, const ReductionContext& ctx) {
    if (!ctx.in_constraint_algebra(f))
        throw std::invalid_argument("prolongation: argument is not in the constraint algebra: " + f.str());
    return f;
}

LambdaSeries restriction(const LambdaSeries& f, const ReductionContext& ctx) {
    const auto& r = ctx.tube().retraction;
    const VarList& v = ctx.vars();
    return f.map([&](const MultiPoly& c) { return substitute(c, r, v); });
}

LambdaSeries quantum_restriction(const LambdaSeries& f, const ReductionContext& ctx) {
    // A = -(d_q - d) h on grade 0
    std::function<LambdaSeries(const LambdaSeries&)> A = [&ctx](const LambdaSeries& x) {
        KoszulChain hx = classical_homotopy(chain_of(ctx.dim(), {}, x), ctx);
        return (koszul_boundary(hx, ctx) - quantum_koszul_boundary(hx, ctx)).at({});
    };
    return restriction(invert_unipotent<LambdaSeries>(A, ctx.order())(f), ctx);
}

KoszulChain boundary_q(const KoszulChain& x, const ReductionContext& ctx) {
    if (x.grade() >= 1) return quantum_koszul_boundary(x, ctx);
    if (x.grade() == 0) {
        KoszulChain out = ctx.zero_chain(-1);
        out.add({}, quantum_restriction(x.at({}), ctx));
        return out;
    }
    throw std::invalid_argument("boundary_q: grade -1 chain");
}

KoszulChain homotopy_k(const KoszulChain& x, const ReductionContext& ctx) {
    if (x.grade() >= 0) return classical_homotopy(x, ctx);
    KoszulChain out = ctx.zero_chain(0);
    out.add({}, prolongation(x.at({}), ctx));
    return out;
}

KoszulChain quantum_homotopy(const KoszulChain& x, const ReductionContext& ctx, int k) {
    if (x.grade() != k)
        throw DimensionError("quantum_homotopy: chain of grade " + std::to_string(x.grade()) + " for k = " +
                             std::to_string(k));
    if (k == -1) return homotopy_k(x, ctx);
    // A = id - (h^{k-1} d_q^k + d_q^{k+1} h^k)
    std::function<KoszulChain(const KoszulChain&)> A = [&ctx](const KoszulChain& y) {
        return y - homotopy_k(boundary_q(y, ctx), ctx) - boundary_q(homotopy_k(y, ctx), ctx);
    };
    return homotopy_k(invert_unipotent<KoszulChain>(A, ctx.order())(x), ctx);
}

KoszulChain random_chain(SampleRng& rng, const ReductionContext& ctx, int grade, int max_degree,
                         const std::vector<int>& allowed) {
    KoszulChain x = ctx.zero_chain(grade);
    for (const auto& w : wedges(ctx.dim(), std::max(grade, 0)))
        x.add(w, rng.series(ctx.vars(), allowed, max_degree, ctx.order()));
    return x;
}

// ---------------------------------------------------------------------------

namespace {

KoszulChain d_translation(const KoszulChain& x, int var) {
    return x.map([var](const LambdaSeries& f) {
        return f.map([var](const MultiPoly& c) { return c.derivative(var); });
    });
}

LambdaSeries d_translation(const LambdaSeries& f, int var) {
    return f.map([var](const MultiPoly& c) { return c.derivative(var); });
}

}  // namespace

CheckList verify_complex_identities(const ReductionContext& ctx, const ComplexCheckOptions& opt) {
    FirstFailure dd{"boundary_squared"};
    FirstFailure idd{"restriction_kills_boundary"};
    FirstFailure ce{"ce_matches_koszul"};
    FirstFailure dqdq{"quantum_boundary_squared"};
    FirstFailure dq0{"quantum_boundary_lambda0"};
    FirstFailure hom{"homotopy_identity"};
    FirstFailure hom0{"homotopy_degree_zero"};
    FirstFailure hprol{"homotopy_kills_prolongation"};
    FirstFailure iprol{"restriction_prolongation"};
    FirstFailure iqq0{"quantum_restriction_lambda0"};
    FirstFailure iqdq{"quantum_restriction_kills_boundary"};
    FirstFailure iqprol{"quantum_restriction_prolongation"};
    FirstFailure idem{"prol_quantum_restriction_idempotent"};
    FirstFailure ideal{"ideal_in_kernel"};
    FirstFailure kerim{"kernel_in_image"};
    FirstFailure uniq{"quantum_restriction_unique"};
    FirstFailure qh0{"quantum_homotopy_k0"};
    FirstFailure qh1{"quantum_homotopy_k1"};
    FirstFailure qh2{"quantum_homotopy_k2"};
    FirstFailure qhm1{"quantum_homotopy_prolongation"};
    FirstFailure qhl0{"quantum_homotopy_lambda0"};
    FirstFailure qhgz{"quantum_homotopy_grade_zero_formula"};
    FirstFailure equiv{"translation_equivariance"};

    SampleRng rng(opt.seed);
    const int dim = ctx.dim();
    const int d = opt.max_degree;
    const auto& amb = ctx.ambient();
    const auto& cons = ctx.constraint_vars();
    const auto fail_chain = [](FirstFailure& ff, const KoszulChain& x, const KoszulChain& lhs,
                               const KoszulChain& rhs) {
        ff.fail("x=" + to_string(x) + " lhs=" + to_string(lhs) + " rhs=" + to_string(rhs));
    };
    const auto fail_series = [](FirstFailure& ff, const LambdaSeries& x, const LambdaSeries& lhs,
                                const LambdaSeries& rhs) {
        ff.fail("f=" + x.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());
    };
    const LambdaSeries zero(ctx.vars(), ctx.order());

    for (int s = 0; s < opt.samples; ++s) {
        // positive grades
        for (int k = 1; k <= dim; ++k) {
            KoszulChain x = random_chain(rng, ctx, k, d, amb);
            KoszulChain bx = koszul_boundary(x, ctx);
            KoszulChain qx = quantum_koszul_boundary(x, ctx);
            if (k >= 2) {
                KoszulChain b2 = koszul_boundary(bx, ctx);
                if (!b2.is_zero()) fail_chain(dd, x, b2, ctx.zero_chain(k - 2));
                KoszulChain q2 = quantum_koszul_boundary(qx, ctx);
                if (!q2.is_zero()) fail_chain(dqdq, x, q2, ctx.zero_chain(k - 2));
            } else {
                LambdaSeries r = restriction(bx.at({}), ctx);
                if (!r.is_zero()) fail_series(idd, bx.at({}), r, zero);
                LambdaSeries rq = quantum_restriction(qx.at({}), ctx);
                if (!rq.is_zero()) fail_series(iqdq, qx.at({}), rq, zero);
            }
            if (lambda0_part(qx) != lambda0_part(bx)) fail_chain(dq0, x, lambda0_part(qx), lambda0_part(bx));
            if (ctx.lie().is_abelian()) {
                KoszulChain cx = ce_boundary(koszul_representation(ctx), x);
                if (cx != bx) fail_chain(ce, x, cx, bx);
            }
            KoszulChain hx = classical_homotopy(bx, ctx) + koszul_boundary(classical_homotopy(x, ctx), ctx);
            if (hx != x) fail_chain(hom, x, hx, x);
        }

        // grade 0
        LambdaSeries f = rng.series(ctx.vars(), amb, d, ctx.order());
        KoszulChain f0 = chain_of(dim, {}, f);
        LambdaSeries hf = koszul_boundary(classical_homotopy(f0, ctx), ctx).at({});
        LambdaSeries lhs0 = prolongation(restriction(f, ctx), ctx) + hf;
        if (lhs0 != f) fail_series(hom0, f, lhs0, f);

        LambdaSeries iqf = quantum_restriction(f, ctx);
        LambdaSeries istar = restriction(f, ctx);
        if (iqf[0] != istar[0]) fail_series(iqq0, f, LambdaSeries(iqf[0], f.order()), LambdaSeries(istar[0], f.order()));
        LambdaSeries P = prolongation(iqf, ctx);
        LambdaSeries PP = prolongation(quantum_restriction(P, ctx), ctx);
        if (PP != P) fail_series(idem, f, PP, P);

        // constraint algebra
        LambdaSeries g = rng.series(ctx.vars(), cons, d, ctx.order());
        LambdaSeries pg = prolongation(g, ctx);
        KoszulChain hpg = classical_homotopy(chain_of(dim, {}, pg), ctx);
        if (!hpg.is_zero()) fail_chain(hprol, chain_of(dim, {}, g), hpg, ctx.zero_chain(1));
        if (restriction(pg, ctx) != g) fail_series(iprol, g, restriction(pg, ctx), g);
        if (quantum_restriction(pg, ctx) != g) fail_series(iqprol, g, quantum_restriction(pg, ctx), g);
        KoszulChain gm1 = ctx.zero_chain(-1);
        gm1.add({}, g);
        if (quantum_homotopy(gm1, ctx, -1).at({}) != pg) fail_series(qhm1, g, quantum_homotopy(gm1, ctx, -1).at({}), pg);

        // the ideal generated by Jq
        LambdaSeries u = rng.series(ctx.vars(), amb, d, ctx.order());
        for (int a = 0; a < dim; ++a) {
            LambdaSeries m = ctx.star().eval(u, ctx.Jq().components[a]);
            LambdaSeries r = quantum_restriction(m, ctx);
            if (!r.is_zero()) fail_series(ideal, m, r, zero);
        }

        // quantum homotopy, grade 0
        KoszulChain hq0 = quantum_homotopy(f0, ctx, 0);
        LambdaSeries back = quantum_koszul_boundary(hq0, ctx).at({});
        LambdaSeries comp = f - P;
        if (back != comp) fail_series(kerim, f, back, comp);
        if (!quantum_restriction(comp, ctx).is_zero()) fail_series(kerim, comp, quantum_restriction(comp, ctx), zero);
        if (P + back != f) fail_series(qh0, f, P + back, f);
        LambdaSeries alt = restriction(f - back, ctx);
        if (alt != iqf) fail_series(uniq, f, alt, iqf);
        if (lambda0_part(hq0) != lambda0_part(classical_homotopy(f0, ctx)))
            fail_chain(qhl0, f0, lambda0_part(hq0), lambda0_part(classical_homotopy(f0, ctx)));
        {
            // h (id + (d_q - d) h)^{-1}
            std::function<LambdaSeries(const LambdaSeries&)> A = [&ctx](const LambdaSeries& y) {
                KoszulChain hy = classical_homotopy(chain_of(ctx.dim(), {}, y), ctx);
                return (koszul_boundary(hy, ctx) - quantum_koszul_boundary(hy, ctx)).at({});
            };
            KoszulChain other =
                classical_homotopy(chain_of(dim, {}, invert_unipotent<LambdaSeries>(A, ctx.order())(f)), ctx);
            if (other != hq0) fail_chain(qhgz, f0, hq0, other);
        }

        // quantum homotopy, grades 1 and 2
        for (int k = 1; k <= std::min(dim, 2); ++k) {
            KoszulChain x = random_chain(rng, ctx, k, d, amb);
            KoszulChain hqk = quantum_homotopy(x, ctx, k);
            KoszulChain lhs = quantum_homotopy(boundary_q(x, ctx), ctx, k - 1) + boundary_q(hqk, ctx);
            if (lhs != x) fail_chain(k == 1 ? qh1 : qh2, x, lhs, x);
            if (lambda0_part(hqk) != lambda0_part(classical_homotopy(x, ctx)))
                fail_chain(qhl0, x, lambda0_part(hqk), lambda0_part(classical_homotopy(x, ctx)));
        }

        // translation derivations commute with every operator
        for (int q : ctx.tube().translated_q) {
            KoszulChain x = random_chain(rng, ctx, 1, d, amb);
            const auto check = [&](const KoszulChain& lhs, const KoszulChain& rhs) {
                if (lhs != rhs) fail_chain(equiv, x, lhs, rhs);
            };
            check(koszul_boundary(d_translation(x, q), ctx), d_translation(koszul_boundary(x, ctx), q));
            check(quantum_koszul_boundary(d_translation(x, q), ctx), d_translation(quantum_koszul_boundary(x, ctx), q));
            check(classical_homotopy(d_translation(x, q), ctx), d_translation(classical_homotopy(x, ctx), q));
            LambdaSeries y = rng.series(ctx.vars(), amb, d, ctx.order());
            if (quantum_restriction(d_translation(y, q), ctx) != d_translation(quantum_restriction(y, ctx), q))
                fail_series(equiv, y, quantum_restriction(d_translation(y, q), ctx),
                            d_translation(quantum_restriction(y, ctx), q));
            LambdaSeries c = rng.series(ctx.vars(), cons, d, ctx.order());
            if (prolongation(d_translation(c, q), ctx) != d_translation(prolongation(c, ctx), q))
                fail_series(equiv, c, prolongation(d_translation(c, q), ctx), d_translation(prolongation(c, ctx), q));
        }
    }

    CheckList out;
    for (auto* ff : {&dd, &idd, &ce, &dqdq, &dq0, &hom, &hom0, &hprol, &iprol, &iqq0, &iqdq, &iqprol, &idem, &ideal,
                     &kerim, &uniq, &qh0, &qh1, &qh2, &qhm1, &qhl0, &qhgz, &equiv})
        out.push_back(ff->result);
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return out;
}

CheckList check_ce_heisenberg(int samples, std::uint64_t seed) {
    const LieAlgebraData h = LieAlgebraData::heisenberg();
    FirstFailure adj{"ce_squared_adjoint"};
    FirstFailure std3{"ce_squared_matrix"};
    FirstFailure contract{"ce_rejects_non_representation"};
    FirstFailure jac{"heisenberg_jacobi"};
    for (const auto& c : check_lie_algebra(h))
        if (!c.passed) jac.fail(c.name + ": " + c.witness);

    // P -> E12, Q -> E23, R -> E13
    std::vector<RationalMatrix> mats(3, RationalMatrix(3, std::vector<mpq_class>(3, 0)));
    mats[0][0][1] = 1;
    mats[1][1][2] = 1;
    mats[2][0][2] = 1;
    const auto reps = {std::make_pair(adjoint_representation(h), &adj), std::make_pair(matrix_representation(h, mats), &std3)};

    SampleRng rng(seed);
    const auto random_vector = [&rng] {
        RepVector v{std::vector<GaussianRational>(3)};
        for (auto& c : v.x) c = rng.uniform(0, 2) == 0 ? GaussianRational(0) : rng.coefficient(true);
        return v;
    };
    for (int s = 0; s < samples; ++s)
        for (const auto& [rho, ff] : reps)
            for (int k = 2; k <= 3; ++k) {
                GradedChain<RepVector> x(3, k, RepVector{std::vector<GaussianRational>(3)});
                for (const auto& w : wedges(3, k)) x.add(w, random_vector());
                auto d2 = ce_boundary(rho, ce_boundary(rho, x));
                if (!d2.is_zero()) ff->fail("grade " + std::to_string(k) + " sample " + std::to_string(s));
            }

    // swapping the images of P and Q breaks [rho(P), rho(Q)] = rho(R)
    std::swap(mats[0], mats[1]);
    auto bad = matrix_representation(h, mats);
    GradedChain<RepVector> x(3, 1, RepVector{std::vector<GaussianRational>(3)});
    x.add({0}, random_vector());
    try {
        ce_boundary(bad, x);
        contract.fail("swapped E12/E23 representation accepted");
    } catch (const ContractViolation&) {
    }
    return {adj.result, contract.result, std3.result, jac.result};
}

}  // namespace qk
