#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qk/koszul.hpp"

namespace qk {

// Raised when a reduced quantity leaves the invariant subalgebra.
struct ReductionError : std::logic_error {
    using std::logic_error::logic_error;
};

// Residual coordinates of the reduced phase space. Elements of the reduced
// algebra are carried on the full variable list of the context; `lift` and
// `descend` convert to and from the residual list.
struct ReducedAlgebra {
    VarList vars;          // residual names, e.g. (q3, p3)
    VarList ambient_vars;  // the context's variable list
    std::vector<int> indices;

    LambdaSeries lift(const LambdaSeries& phi) const;
    // Throws ReductionError outside the invariant subalgebra.
    LambdaSeries descend(const LambdaSeries& f) const;
};

ReducedAlgebra reduced_algebra(const ReductionContext& ctx);

// pi*{phi, phi'}_red = i*{prol pi*phi, prol pi*phi'} with the bracket of ctx.star()
LambdaSeries reduced_poisson_bracket(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx);
// pi*(phi *_red phi') = i**(prol pi*phi * prol pi*phi')
LambdaSeries reduced_star(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx);
// *_red packaged as a star product on the context's variables together with {.,.}_red.
StarProduct reduced_star_product(const ReductionContext& ctx);
// The Weyl product of the residual canonical pairs (q_j, p_j), evaluated
// directly on T*R^m and renamed back.
LambdaSeries residual_weyl_star(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx);

// Symmetric tensors on flat Q as polynomials in q_i and formal symbols d_q1..d_qn.
VarList tensor_vars(int n);
MultiPoly symbol_iso(const MultiPoly& T, int n);
MultiPoly symbol_iso_inverse(const MultiPoly& F, int n);

// Horizontal (non-translated) and vertical (translated) configuration
// directions, 1-based.
struct CotangentSplit {
    int n = 0;
    std::vector<int> horizontal;
    std::vector<int> vertical;

    static CotangentSplit from_translated(int n, const std::vector<int>& translated);
    int vertical_p(int i) const { return n + vertical.at(i) - 1; }
};

// Part of F with zero degree in every vertical p.
MultiPoly horizontal_part(const MultiPoly& F, const CotangentSplit& split);
MultiPoly vertical_part(const MultiPoly& F, const CotangentSplit& split);
// F = h(F) + sum_i r^i(F) p_{vert(i)}; a monomial of vertical degree D with
// exponent d_i in p_{vert(i)} contributes (d_i / D) m / p_{vert(i)} to r^i.
MultiPoly r_operator(const MultiPoly& F, int i, const CotangentSplit& split);
LambdaSeries horizontal_part(const LambdaSeries& F, const CotangentSplit& split);
LambdaSeries r_operator(const LambdaSeries& F, int i, const CotangentSplit& split);

// Delta F = (1 / i lambda) sum_i (r^i(F) J(e_i) - r^i(F) * Jq(e_i)) with J(e_i) = p_{vert(i)}.
LambdaSeries delta_star(const LambdaSeries& F, const CotangentSplit& split, const StarProduct& star,
                        const QuantumMomentumMap& Jq_kan);
// The same operator for a context, evaluated in the straightened coordinates
// of its tube and transported back.
LambdaSeries delta_star(const LambdaSeries& F, const ReductionContext& ctx);
// (1 / i lambda)(d - d_q) h F
LambdaSeries delta_via_homotopy(const LambdaSeries& F, const ReductionContext& ctx);

// Closed-form cotangent reduction: lift horizontally, multiply, apply
// (id - i lambda Delta)^{-1}, take the horizontal part, identify.
LambdaSeries knp_reduced_star(const LambdaSeries& phi, const LambdaSeries& psi, const ReductionContext& ctx);

// t_alpha*: p_a -> p_a + alpha_a(q); alpha has one entry per configuration coordinate.
Substitution fiber_translation(const PhaseSpace& space, const std::vector<MultiPoly>& alpha);
LambdaSeries fiber_translate(const std::vector<MultiPoly>& alpha, const LambdaSeries& f, const PhaseSpace& space);
StarProduct fiber_translate_star(std::shared_ptr<const StarProduct> base, const std::vector<MultiPoly>& alpha,
                                 const PhaseSpace& space);

// Translation context on T*R^n with J = p_a for the translated a.
ReductionContext make_translation_context(std::shared_ptr<const StarProduct> star, const PhaseSpace& space,
                                          const std::vector<int>& translated, int order);

// Pulls `base` (a canonical context) back along t_{b q_c dq_a}, then shifts
// the level by mu: star becomes *_B, J = J_B - mu, Jq = t*Jq - mu.
ReductionContext build_shifted_context(const ReductionContext& base, const mpq_class& b, int a, int c,
                                       const std::vector<mpq_class>& mu);

// S1: T*R^3 translating q1, q2. S1': T*R^2 translating q1. S2: S1' with
// B = b dq1 ^ dq2 and level mu. All use the Weyl product.
ReductionContext scenario_s1(int order);
ReductionContext scenario_s1p(int order);
ReductionContext scenario_s2(int order, const mpq_class& b, const mpq_class& mu);

struct ReductionCheckOptions {
    int samples = 20;
    int max_degree = 3;
    std::uint64_t seed = 1;
};

// Star-product axioms of *_red on the reduced algebra, Jacobi/antisymmetry/Leibniz
// of {.,.}_red, and the unit.
CheckList check_reduced_algebra(const ReductionContext& ctx, const ReductionCheckOptions& opt);
// knp_reduced_star == reduced_star and Delta == (1/i lambda)(d - d_q) h on samples.
CheckList check_knp_equivalence(const ReductionContext& ctx, const ReductionCheckOptions& opt);

}  // namespace qk
