#include "qk/lie_symmetry.hpp"

#include <algorithm>
#include <set>

#include "qk/random.hpp"

namespace qk {

namespace {

std::vector<std::vector<std::vector<mpq_class>>> zero_constants(int k) {
    return std::vector<std::vector<std::vector<mpq_class>>>(
        k, std::vector<std::vector<mpq_class>>(k, std::vector<mpq_class>(k, mpq_class(0))));
}

}  // namespace

LieAlgebraData LieAlgebraData::abelian(int k) {
    LieAlgebraData g;
    g.dim = k;
    for (int a = 1; a <= k; ++a) g.labels.push_back("e" + std::to_string(a));
    g.c = zero_constants(k);
    return g;
}

LieAlgebraData LieAlgebraData::heisenberg() {
    LieAlgebraData g;
    g.dim = 3;
    g.labels = {"P", "Q", "R"};
    g.c = zero_constants(3);
    g.set_bracket(0, 1, {0, 0, 1});
    return g;
}

void LieAlgebraData::set_bracket(int a, int b, const std::vector<mpq_class>& coeffs) {
    if (static_cast<int>(coeffs.size()) != dim) throw std::invalid_argument("set_bracket: wrong coefficient count");
    for (int g = 0; g < dim; ++g) {
        c[g][a][b] = coeffs[g];
        c[g][b][a] = -coeffs[g];
    }
}

bool LieAlgebraData::is_abelian() const {
    for (const auto& m : c)
        for (const auto& row : m)
            for (const auto& x : row)
                if (sgn(x) != 0) return false;
    return true;
}

CheckList check_lie_algebra(const LieAlgebraData& lie) {
    FirstFailure anti{"antisymmetry"};
    FirstFailure jacobi{"jacobi"};
    const int k = lie.dim;
    for (int g = 0; g < k; ++g)
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (lie.c[g][a][b] != -lie.c[g][b][a])
                    anti.fail("c^" + std::to_string(g + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1));
    // sum_d c^d_{ab} c^e_{dg} + cyclic(a, b, g) = 0
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int g = 0; g < k; ++g)
                for (int e = 0; e < k; ++e) {
                    mpq_class s = 0;
                    for (int d = 0; d < k; ++d)
                        s += lie.c[d][a][b] * lie.c[e][d][g] + lie.c[d][b][g] * lie.c[e][d][a] +
                             lie.c[d][g][a] * lie.c[e][d][b];
                    if (sgn(s) != 0)
                        jacobi.fail("(" + lie.labels[a] + "," + lie.labels[b] + "," + lie.labels[g] + ") component " +
                                    lie.labels[e] + " = " + s.get_str());
                }
    return {anti.result, jacobi.result};
}

TranslationAction TranslationAction::make(const PhaseSpace& space, std::vector<int> translated) {
    std::set<int> seen;
    for (int a : translated) {
        if (a < 1 || a > space.n())
            throw std::invalid_argument("translated index " + std::to_string(a) + " outside 1.." +
                                        std::to_string(space.n()));
        if (!seen.insert(a).second) throw std::invalid_argument("translated index repeated: " + std::to_string(a));
    }
    const int k = static_cast<int>(translated.size());
    return TranslationAction{space, std::move(translated), LieAlgebraData::abelian(k)};
}

MultiPoly TranslationAction::fundamental(int alpha, const MultiPoly& f) const {
    return f.derivative(space.q(translated.at(alpha)));
}

MultiPoly MomentumMap::on_bracket(int a, int b) const {
    MultiPoly out(components.at(a).vars());
    for (int g = 0; g < lie.dim; ++g)
        if (sgn(lie.c[g][a][b]) != 0) out += GaussianRational(lie.c[g][a][b]) * components[g];
    return out;
}

QuantumMomentumMap QuantumMomentumMap::from_classical(const MomentumMap& J, int order) {
    QuantumMomentumMap q{J.lie, {}};
    for (const auto& c : J.components) q.components.emplace_back(c, order);
    return q;
}

MomentumMap QuantumMomentumMap::classical() const {
    MomentumMap J{lie, {}};
    for (const auto& c : components) J.components.push_back(c[0]);
    return J;
}

LambdaSeries QuantumMomentumMap::on_bracket(int a, int b) const {
    LambdaSeries out(components.at(a).vars(), components.at(a).order());
    for (int g = 0; g < lie.dim; ++g)
        if (sgn(lie.c[g][a][b]) != 0) out += GaussianRational(lie.c[g][a][b]) * components[g];
    return out;
}

MomentumMap canonical_momentum_map(const TranslationAction& action) {
    MomentumMap J{action.lie, {}};
    const auto& v = action.space.vars();
    for (int a : action.translated) J.components.push_back(MultiPoly::var(v, (*v)[action.space.p(a)]));
    return J;
}

MomentumMap magnetic_momentum_map(const TranslationAction& action, const mpq_class& b, int a, int c) {
    const auto& tr = action.translated;
    const auto pos = std::find(tr.begin(), tr.end(), a);
    if (pos == tr.end())
        throw EquivarianceError("magnetic pair: q" + std::to_string(a) + " is not a translated coordinate");
    if (c < 1 || c > action.space.n() || c == a)
        throw std::invalid_argument("magnetic pair: invalid partner index " + std::to_string(c));
    if (std::find(tr.begin(), tr.end(), c) != tr.end())
        throw EquivarianceError("magnetic pair: q" + std::to_string(c) +
                                " is translated, so j0 = b q" + std::to_string(c) + " is not invariant");
    MomentumMap J = canonical_momentum_map(action);
    const auto& v = action.space.vars();
    J.components[pos - tr.begin()] += GaussianRational(b) * MultiPoly::var(v, (*v)[action.space.q(c)]);
    return J;
}

MomentumMap shift_momentum_map(const MomentumMap& J, const std::vector<mpq_class>& mu) {
    if (mu.size() != J.components.size()) throw DimensionError("shift: mu has the wrong length");
    MomentumMap out = J;
    for (std::size_t a = 0; a < mu.size(); ++a)
        out.components[a] -= MultiPoly::constant(J.components[a].vars(), GaussianRational(mu[a]));
    return out;
}

QuantumMomentumMap shift_momentum_map(const QuantumMomentumMap& Jq, const std::vector<mpq_class>& mu) {
    if (mu.size() != Jq.components.size()) throw DimensionError("shift: mu has the wrong length");
    QuantumMomentumMap out = Jq;
    for (std::size_t a = 0; a < mu.size(); ++a) {
        auto& s = out.components[a];
        s.set(0, s[0] - MultiPoly::constant(s.vars(), GaussianRational(mu[a])));
    }
    return out;
}

CheckList check_quantum_momentum_map(const StarProduct& star, const QuantumMomentumMap& Jq,
                                     const MomentumCheckOptions& opt) {
    FirstFailure ham{"quantum_hamiltonian"};
    FirstFailure brk{"quantum_bracket"};
    FirstFailure strong{"strongly_invariant", false};
    const int k = Jq.lie.dim;
    if (k == 0) return {brk.result, ham.result, strong.result};

    const VarList& vars = star.vars();
    const int L = Jq.components[0].order();
    const GaussianRational I = GaussianRational::i();
    const std::vector<int> allowed = opt.allowed.empty() ? all_indices(vars) : opt.allowed;
    SampleRng rng(opt.seed);

    for (int s = 0; s < opt.samples; ++s) {
        LambdaSeries f = rng.series(vars, allowed, opt.max_degree, L);
        for (int a = 0; a < k; ++a) {
            LambdaSeries J0(Jq.components[a][0], L);
            LambdaSeries lhs = I * star.bracket(J0, f).shift();
            LambdaSeries rhs = star.commutator(Jq.components[a], f);
            if (lhs != rhs)
                ham.fail(Jq.lie.labels[a] + " f=" + f.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());
        }
    }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            LambdaSeries lhs = I * Jq.on_bracket(a, b).shift();
            LambdaSeries rhs = star.commutator(Jq.components[a], Jq.components[b]);
            if (lhs != rhs)
                brk.fail("(" + Jq.lie.labels[a] + "," + Jq.lie.labels[b] + ") lhs=" + lhs.str() + " rhs=" + rhs.str());
        }
    for (int a = 0; a < k; ++a) {
        const LambdaSeries& c = Jq.components[a];
        if (c != LambdaSeries(c[0], L)) strong.fail(Jq.lie.labels[a] + " Jq=" + c.str());
    }
    return {brk.result, ham.result, strong.result};
}

CheckResult check_classical_equivariance(const MomentumMap& J, const PhaseSpace& space) {
    FirstFailure eq{"classical_equivariance"};
    const int k = J.lie.dim;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            MultiPoly lhs = space.bracket(J.components[a], J.components[b]);
            MultiPoly rhs = J.on_bracket(a, b);
            if (lhs != rhs)
                eq.fail("(" + J.lie.labels[a] + "," + J.lie.labels[b] + ") lhs=" + lhs.str() + " rhs=" + rhs.str());
        }
    return eq.result;
}

CheckList check_generates_action(const MomentumMap& J, const TranslationAction& action, int samples,
                                 std::uint64_t seed) {
    FirstFailure ham{"generates_fundamental_field"};
    FirstFailure form{"differential_matches_omega"};
    const PhaseSpace& sp = action.space;
    const VarList& vars = sp.vars();
    SampleRng rng(seed);
    const auto all = all_indices(vars);
    for (int s = 0; s < samples; ++s) {
        MultiPoly f = rng.poly(vars, all, 3);
        for (int a = 0; a < action.dim(); ++a) {
            MultiPoly lhs = sp.bracket(f, J.components[a]);
            MultiPoly rhs = action.fundamental(a, f);
            if (lhs != rhs) ham.fail(J.lie.labels[a] + " f=" + f.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());
        }
    }
    // omega(d/dq_a, .)_j = omega_{q_a j}
    for (int a = 0; a < action.dim(); ++a) {
        const int r = sp.q(action.translated[a]);
        for (std::size_t j = 0; j < vars->size(); ++j) {
            MultiPoly lhs = J.components[a].derivative(static_cast<int>(j));
            MultiPoly rhs = MultiPoly::constant(vars, GaussianRational(sp.omega()[r][j]));
            if (lhs != rhs)
                form.fail(J.lie.labels[a] + " d/d" + (*vars)[j] + ": lhs=" + lhs.str() + " rhs=" + rhs.str());
        }
    }
    return {form.result, ham.result};
}

}  // namespace qk
