#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qk/check.hpp"
#include "qk/phase_space.hpp"

namespace qk {

using Substitution = std::map<std::string, MultiPoly>;

LambdaSeries apply_substitution(const LambdaSeries& f, const Substitution& s);

// Constant-coefficient first-order operator sum_k c_k d/dx^{v_k}.
struct LinearDiffOp {
    std::vector<std::pair<int, GaussianRational>> terms;
    MultiPoly apply(const MultiPoly& f) const;
};

// One factor c * (L tensor R) in exp(lambda * sum_j c_j L_j tensor R_j).
struct BidiffPair {
    GaussianRational c;
    LinearDiffOp left;
    LinearDiffOp right;
};

struct NotInvertible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class StarProduct {
public:
    enum class Kind { Weyl, Wick, StdOrdered, Pullback, Custom };

    using EvalFn = std::function<LambdaSeries(const LambdaSeries&, const LambdaSeries&)>;

    // exp(-(i lambda / 2) omega^{rs} d_r (x) d_s) with omega^{rs} taken from `space`.
    static StarProduct weyl(const PhaseSpace& space);
    // exp(2 lambda d_{z_k} (x) d_{zbar_k}), z_k = q_k + i p_k.
    static StarProduct wick(const PhaseSpace& space);
    // sum_r (1/r!) (lambda/i)^r d_p^r f . d_q^r g
    static StarProduct std_ordered(const PhaseSpace& space);
    // phi* o base o (phi*^{-1} (x) phi*^{-1}); the two substitutions must be
    // mutually inverse on generators.
    static StarProduct pullback(std::shared_ptr<const StarProduct> base, Substitution fwd, Substitution inv);
    // Arbitrary product together with the Poisson bracket it deforms.
    static StarProduct custom(std::string name, VarList vars, EvalFn eval, EvalFn bracket);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const VarList& vars() const { return vars_; }

    LambdaSeries eval(const LambdaSeries& f, const LambdaSeries& g) const;
    LambdaSeries eval(const MultiPoly& f, const MultiPoly& g, int order) const;
    // The Poisson bracket whose i-multiple is the first-order commutator.
    LambdaSeries bracket(const LambdaSeries& f, const LambdaSeries& g) const;
    LambdaSeries commutator(const LambdaSeries& f, const LambdaSeries& g) const {
        return eval(f, g) - eval(g, f);
    }

    const std::vector<BidiffPair>& pairs() const { return pairs_; }

private:
    StarProduct() = default;
    LambdaSeries eval_bidiff(const MultiPoly& f, const MultiPoly& g, int order) const;

    Kind kind_ = Kind::Weyl;
    std::string name_;
    VarList vars_;
    std::optional<PhaseSpace> space_;
    std::vector<BidiffPair> pairs_;
    std::shared_ptr<const StarProduct> base_;
    Substitution fwd_, inv_;
    EvalFn custom_eval_, custom_bracket_;
};

LambdaSeries weyl_star(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space);
LambdaSeries wick_star(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space);
LambdaSeries std_star(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space);
StarProduct pullback_star(std::shared_ptr<const StarProduct> base, Substitution fwd, Substitution inv);

// z_k = q_k + i p_k and zbar_k = q_k - i p_k as polynomials in (q, p).
MultiPoly wick_z(const PhaseSpace& space, int k);
MultiPoly wick_zbar(const PhaseSpace& space, int k);

struct AxiomOptions {
    int samples = 30;
    int max_degree = 3;
    std::uint64_t seed = 1;
    // Variable indices used for samples; empty means all variables.
    std::vector<int> allowed;
};

// Associativity, lambda^0 = product, first-order commutator = i{.,.}, unit,
// constants, and the Hermitian property (recorded with required = false).
CheckList check_star_axioms(const StarProduct& star, int order, const AxiomOptions& opt);

}  // namespace qk
