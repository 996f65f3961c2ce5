#pragma once

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "qk/invert_unipotent.hpp"
#include "qk/lie_symmetry.hpp"
#include "qk/random.hpp"

namespace qk {

// Strictly increasing 0-based basis indices e_{w_1} ^ ... ^ e_{w_k}.
using Wedge = std::vector<int>;

// i(e^alpha) w as (sign, wedge); sign 0 when alpha does not occur.
std::pair<int, Wedge> interior(int alpha, const Wedge& w);
// e_gamma ^ w as (sign, wedge); sign 0 when gamma already occurs.
std::pair<int, Wedge> wedge_front(int gamma, const Wedge& w);
// All k-subsets of {0..dim-1} in lexicographic order.
std::vector<Wedge> wedges(int dim, int k);

// Element of V (x) Lambda^k g. V needs +, -, GaussianRational * V, ==, is_zero().
template <class V>
class GradedChain {
public:
    GradedChain(int dim, int grade, V zero) : dim_(dim), grade_(grade), zero_(std::move(zero)) {}

    int dim() const { return dim_; }
    int grade() const { return grade_; }
    const V& zero() const { return zero_; }
    const std::map<Wedge, V>& terms() const { return terms_; }

    const V& at(const Wedge& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? zero_ : it->second;
    }
    void add(const Wedge& w, const V& v, const GaussianRational& c = GaussianRational(1)) {
        if (v.is_zero() || c.is_zero()) return;
        auto it = terms_.find(w);
        V next = (it == terms_.end() ? zero_ : it->second) + c * v;
        if (next.is_zero()) {
            if (it != terms_.end()) terms_.erase(it);
        } else if (it == terms_.end()) {
            terms_.emplace(w, std::move(next));
        } else {
            it->second = std::move(next);
        }
    }
    bool is_zero() const { return terms_.empty(); }

    GradedChain map(const std::function<V(const V&)>& f) const {
        GradedChain out(dim_, grade_, zero_);
        for (const auto& [w, v] : terms_) out.add(w, f(v));
        return out;
    }

    friend GradedChain operator+(GradedChain a, const GradedChain& b) {
        a.require_same(b);
        for (const auto& [w, v] : b.terms_) a.add(w, v);
        return a;
    }
    friend GradedChain operator-(GradedChain a, const GradedChain& b) {
        a.require_same(b);
        for (const auto& [w, v] : b.terms_) a.add(w, v, GaussianRational(-1));
        return a;
    }
    friend GradedChain operator*(const GaussianRational& c, const GradedChain& a) {
        GradedChain out(a.dim_, a.grade_, a.zero_);
        for (const auto& [w, v] : a.terms_) out.add(w, v, c);
        return out;
    }
    friend bool operator==(const GradedChain& a, const GradedChain& b) {
        return a.dim_ == b.dim_ && a.grade_ == b.grade_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const GradedChain& a, const GradedChain& b) { return !(a == b); }

private:
    void require_same(const GradedChain& o) const {
        if (dim_ != o.dim_ || grade_ != o.grade_) throw DimensionError("chains of different shape");
    }

    int dim_;
    int grade_;
    V zero_;
    std::map<Wedge, V> terms_;
};

using KoszulChain = GradedChain<LambdaSeries>;

// Smallest lambda order over all coefficients; order+1 for the zero chain.
int valuation(const KoszulChain& x);
std::string to_string(const KoszulChain& x);
KoszulChain chain_of(int dim, const Wedge& w, const LambdaSeries& f);
KoszulChain lambda0_part(const KoszulChain& x);

// Finite-dimensional coefficient space for Chevalley-Eilenberg tests.
struct RepVector {
    std::vector<GaussianRational> x;
    bool is_zero() const;
    friend RepVector operator+(RepVector a, const RepVector& b);
    friend RepVector operator-(RepVector a, const RepVector& b);
    friend RepVector operator*(const GaussianRational& c, RepVector a);
    friend bool operator==(const RepVector& a, const RepVector& b) { return a.x == b.x; }
};

// rho(e_alpha) acting on V; `probes` are the vectors on which the
// representation property is verified before use.
template <class V>
struct Representation {
    LieAlgebraData lie;
    std::function<V(int, const V&)> act;
    std::vector<V> probes;
};

Representation<RepVector> matrix_representation(const LieAlgebraData& lie, const std::vector<RationalMatrix>& mats);
// (ad e_alpha)_{gamma beta} = c^gamma_{alpha beta}
Representation<RepVector> adjoint_representation(const LieAlgebraData& lie);

// rho([e_a, e_b]) v = rho(e_a) rho(e_b) v - rho(e_b) rho(e_a) v on v, for all basis pairs.
template <class V>
bool satisfies_representation(const Representation<V>& rho, const V& v) {
    const auto& g = rho.lie;
    for (int a = 0; a < g.dim; ++a)
        for (int b = a + 1; b < g.dim; ++b) {
            V lhs = v - v;
            for (int c = 0; c < g.dim; ++c)
                if (sgn(g.c[c][a][b]) != 0) lhs = lhs + GaussianRational(g.c[c][a][b]) * rho.act(c, v);
            V rhs = rho.act(a, rho.act(b, v)) - rho.act(b, rho.act(a, v));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

// d_CE(v (x) xi) = rho(e_a) v (x) i(e^a) xi - 1/2 c^g_{ab} v (x) e_g ^ i(e^a) i(e^b) xi
template <class V>
GradedChain<V> ce_boundary(const Representation<V>& rho, const GradedChain<V>& x) {
    if (x.grade() < 1) throw std::invalid_argument("ce_boundary: grade 0 chain");
    for (const auto& v : rho.probes)
        if (!satisfies_representation(rho, v)) throw ContractViolation("ce_boundary: not a representation");
    for (const auto& [w, v] : x.terms())
        if (!satisfies_representation(rho, v)) throw ContractViolation("ce_boundary: not a representation");
    const auto& g = rho.lie;
    const GaussianRational minus_half(mpq_class(-1, 2));
    GradedChain<V> out(x.dim(), x.grade() - 1, x.zero());
    for (const auto& [w, v] : x.terms()) {
        for (int a = 0; a < g.dim; ++a) {
            auto [s, wa] = interior(a, w);
            if (s != 0) out.add(wa, rho.act(a, v), GaussianRational(s));
        }
        for (int b = 0; b < g.dim; ++b) {
            auto [sb, wb] = interior(b, w);
            if (sb == 0) continue;
            for (int a = 0; a < g.dim; ++a) {
                auto [sa, wab] = interior(a, wb);
                if (sa == 0) continue;
                for (int c = 0; c < g.dim; ++c) {
                    if (sgn(g.c[c][a][b]) == 0) continue;
                    auto [sc, wc] = wedge_front(c, wab);
                    if (sc == 0) continue;
                    out.add(wc, v, minus_half * GaussianRational(g.c[c][a][b] * (sa * sb * sc)));
                }
            }
        }
    }
    return out;
}

// Global good tube for J_alpha = p_{a(alpha)} + g_alpha, with g_alpha free of
// every translated q and every constrained p. In tube coordinates
// Psi(m) = (c, mu) the fiber coordinate mu_alpha reuses the name p_{a(alpha)}.
struct GoodTube {
    std::vector<int> translated_q;   // variable indices
    std::vector<int> constrained_p;  // variable indices
    std::vector<MultiPoly> offsets;  // g_alpha
    Substitution to_tube;            // (Psi^{-1})*: p_a -> p_a - g_alpha
    Substitution from_tube;          // Psi*: p_a -> p_a + g_alpha
    Substitution retraction;         // i*: p_a -> -g_alpha

    static GoodTube make(const MomentumMap& J, const PhaseSpace& space, const std::vector<int>& translated);
};

class ReductionContext {
public:
    // `translated` are 1-based configuration indices; `ambient` lists the
    // variable indices the algebra is built from (empty means all).
    static ReductionContext make(std::shared_ptr<const StarProduct> star, const PhaseSpace& space,
                                 std::vector<int> translated, MomentumMap J, QuantumMomentumMap Jq,
                                 std::vector<int> ambient = {});

    const StarProduct& star() const { return *star_; }
    std::shared_ptr<const StarProduct> star_ptr() const { return star_; }
    const PhaseSpace& space() const { return space_; }
    const VarList& vars() const { return space_.vars(); }
    int order() const { return order_; }
    int dim() const { return J_.lie.dim; }
    const LieAlgebraData& lie() const { return J_.lie; }
    const MomentumMap& J() const { return J_; }
    const QuantumMomentumMap& Jq() const { return Jq_; }
    const GoodTube& tube() const { return tube_; }
    const std::vector<int>& translated() const { return translated_; }
    const std::vector<int>& ambient() const { return ambient_; }
    // ambient minus constrained p's
    const std::vector<int>& constraint_vars() const { return constraint_; }
    // ambient minus constrained p's and translated q's
    const std::vector<int>& reduced_vars() const { return reduced_; }

    bool in_constraint_algebra(const LambdaSeries& f) const;
    bool in_reduced_algebra(const LambdaSeries& f) const;
    LambdaSeries series(const MultiPoly& f) const { return LambdaSeries(f, order_); }
    KoszulChain zero_chain(int grade) const;

private:
    ReductionContext() = default;

    std::shared_ptr<const StarProduct> star_;
    PhaseSpace space_ = PhaseSpace::canonical(1);
    int order_ = 0;
    MomentumMap J_;
    QuantumMomentumMap Jq_;
    GoodTube tube_;
    std::vector<int> translated_;
    std::vector<int> ambient_, constraint_, reduced_;
};

// d(f (x) xi) = f J_alpha (x) i(e^alpha) xi
KoszulChain koszul_boundary(const KoszulChain& x, const ReductionContext& ctx);
KoszulChain koszul_boundary(const KoszulChain& x, const MomentumMap& J);
// d_q(f (x) xi) = f * Jq_alpha (x) i(e^alpha) xi + (i lambda / 2) c^g_{ab} f (x) e_g ^ i(e^a) i(e^b) xi
KoszulChain quantum_koszul_boundary(const KoszulChain& x, const ReductionContext& ctx);
KoszulChain quantum_koszul_boundary(const KoszulChain& x, const StarProduct& star, const QuantumMomentumMap& Jq);
// The Koszul boundary written as a Chevalley-Eilenberg operator for rho(e_a) f = f J_a.
Representation<LambdaSeries> koszul_representation(const ReductionContext& ctx);

// h(f (x) eta) o Psi^{-1}(c, mu) = int_0^1 t^k d/dmu_alpha (f o Psi^{-1})(c, t mu) dt (x) e_alpha ^ eta
KoszulChain classical_homotopy(const KoszulChain& x, const ReductionContext& ctx);
LambdaSeries classical_homotopy_coefficient(const LambdaSeries& f, int alpha, int k, const ReductionContext& ctx);

LambdaSeries prolongation(const LambdaSeries& f, const ReductionContext& ctx);
LambdaSeries restriction(const LambdaSeries& f, const ReductionContext& ctx);
// i** = i* o (id + (d_q - d) h)^{-1}
LambdaSeries quantum_restriction(const LambdaSeries& f, const ReductionContext& ctx);

// Operators on grade k chains with the conventions h^{-1} = prol and d_q^0 = i**.
// Grade -1 chains hold a constraint-algebra element under the empty wedge.
KoszulChain boundary_q(const KoszulChain& x, const ReductionContext& ctx);
KoszulChain homotopy_k(const KoszulChain& x, const ReductionContext& ctx);
// h_q^k = h^k (h^{k-1} d_q^k + d_q^{k+1} h^k)^{-1} for x of grade k >= 0;
// k = -1 gives prol.
KoszulChain quantum_homotopy(const KoszulChain& x, const ReductionContext& ctx, int k);

struct ComplexCheckOptions {
    int samples = 10;
    int max_degree = 3;
    std::uint64_t seed = 1;
};

KoszulChain random_chain(SampleRng& rng, const ReductionContext& ctx, int grade, int max_degree,
                         const std::vector<int>& allowed);

// Every classical and quantum identity of the augmented complex on seeded samples.
CheckList verify_complex_identities(const ReductionContext& ctx, const ComplexCheckOptions& opt);
// d_CE^2 = 0 for the Heisenberg adjoint representation on seeded random chains,
// and the representation contract rejecting a non-representation.
CheckList check_ce_heisenberg(int samples, std::uint64_t seed);

}  // namespace qk
