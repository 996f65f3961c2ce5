#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qk/check.hpp"
#include "qk/star_product.hpp"

namespace qk {

// Raised when a momentum-map construction would break equivariance.
struct EquivarianceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structure constants c^gamma_{alpha beta} = <e^gamma, [e_alpha, e_beta]>,
// stored as c[gamma][alpha][beta] with 0-based indices.
struct LieAlgebraData {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<mpq_class>>> c;

    static LieAlgebraData abelian(int k);
    // Basis (P, Q, R) with [P, Q] = R and R central.
    static LieAlgebraData heisenberg();
    // Sets [e_a, e_b] = sum_g coeffs[g] e_g and the antisymmetric partner.
    void set_bracket(int a, int b, const std::vector<mpq_class>& coeffs);

    const mpq_class& structure(int gamma, int alpha, int beta) const { return c[gamma][alpha][beta]; }
    bool is_abelian() const;
};

// Antisymmetry and Jacobi identity of the structure constants.
CheckList check_lie_algebra(const LieAlgebraData& lie);

// Lifted translation action of R^k on T*R^n moving q_{a(alpha)}.
struct TranslationAction {
    PhaseSpace space;
    std::vector<int> translated;  // 1-based configuration indices a(alpha)
    LieAlgebraData lie;

    static TranslationAction make(const PhaseSpace& space, std::vector<int> translated);
    int dim() const { return static_cast<int>(translated.size()); }
    // xi_M f = {f, J(xi)}; for translations this is +d/dq_{a(alpha)}.
    MultiPoly fundamental(int alpha, const MultiPoly& f) const;
};

struct MomentumMap {
    LieAlgebraData lie;
    std::vector<MultiPoly> components;

    // J([e_a, e_b]) = sum_g c^g_{ab} J_g
    MultiPoly on_bracket(int a, int b) const;
};

struct QuantumMomentumMap {
    LieAlgebraData lie;
    std::vector<LambdaSeries> components;

    static QuantumMomentumMap from_classical(const MomentumMap& J, int order);
    MomentumMap classical() const;
    LambdaSeries on_bracket(int a, int b) const;
};

// J_alpha = p_{a(alpha)}
MomentumMap canonical_momentum_map(const TranslationAction& action);
// For B = b dq^a ^ dq^c the component translating q_a becomes p_a + b q_c.
MomentumMap magnetic_momentum_map(const TranslationAction& action, const mpq_class& b, int a, int c);
MomentumMap shift_momentum_map(const MomentumMap& J, const std::vector<mpq_class>& mu);
QuantumMomentumMap shift_momentum_map(const QuantumMomentumMap& Jq, const std::vector<mpq_class>& mu);

// i lambda {J(xi), f} = [Jq(xi), f] on samples, i lambda Jq([xi, eta]) = [Jq(xi), Jq(eta)]
// on basis pairs, and an informational strong-invariance entry (Jq has no
// lambda-corrections).
struct MomentumCheckOptions {
    int samples = 20;
    int max_degree = 3;
    std::uint64_t seed = 1;
    std::vector<int> allowed;
};
CheckList check_quantum_momentum_map(const StarProduct& star, const QuantumMomentumMap& Jq,
                                     const MomentumCheckOptions& opt);

// {J(xi), J(eta)} = J([xi, eta]) on all basis pairs.
CheckResult check_classical_equivariance(const MomentumMap& J, const PhaseSpace& space);

// {f, J_alpha} = xi_M f on samples, and dJ_alpha = omega(xi_M, .) componentwise.
CheckList check_generates_action(const MomentumMap& J, const TranslationAction& action, int samples,
                                 std::uint64_t seed);

}  // namespace qk
