#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qk/reduction.hpp"

namespace qk {

struct StageConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// g = g1 (+) g2 as a partition of the basis indices (0-based).
struct StageConfig {
    LieAlgebraData lie;
    std::vector<int> sub;         // basis of g1
    std::vector<int> complement;  // basis of g2

    // Partition, g1 an ideal, g2 invariant ([g, g2] in g2). Throws StageConfigError.
    void validate() const;
    bool degenerate() const { return complement.empty(); }
};

// Structure constants of the span of `idx`, projected onto it.
LieAlgebraData restrict_lie(const LieAlgebraData& lie, const std::vector<int>& idx);

// Jq1(xi1) = Jq(xi1) for xi1 in g1.
QuantumMomentumMap restrict_momentum_map(const QuantumMomentumMap& Jq, const StageConfig& cfg);
MomentumMap restrict_momentum_map(const MomentumMap& J, const StageConfig& cfg);

// Jq_alpha + lambda * alpha_alpha, e.g. alpha = i c for Jq = J + i lambda c.
ReductionContext alpha_shifted_context(const ReductionContext& ctx, const std::vector<GaussianRational>& alpha);

struct StagePipeline {
    StageConfig cfg;
    std::shared_ptr<const ReductionContext> ctx;   // one step by g
    std::shared_ptr<const ReductionContext> ctx1;  // first stage by g1
    std::shared_ptr<const StarProduct> star_red1;  // *_red1 on the first reduced algebra
    // Second stage by g/g1 = g2 on the first reduced algebra with *_red1;
    // null when g1 = g.
    std::shared_ptr<const ReductionContext> ctx2;

    static StagePipeline build(const ReductionContext& ctx, StageConfig cfg);
};

// Jq2(xi2) = i1**(Jq(xi2)) for the complement basis; throws ReductionError when
// the result leaves the first reduced algebra.
QuantumMomentumMap induced_second_momentum_map(const ReductionContext& ctx, const ReductionContext& ctx1,
                                               const StageConfig& cfg);

// phi *_red2 psi (phi *_red1 psi in the degenerate case). The identification
// of the two reduced algebras is the identity on residual variable names.
LambdaSeries two_stage_reduce(const LambdaSeries& phi, const LambdaSeries& psi, const StagePipeline& pipe);

struct StageCheckOptions {
    int samples = 30;
    int max_degree = 3;
    std::uint64_t seed = 1;
};

// *_red2 == *_red and {.,.}_red2 == {.,.}_red on seeded pairs.
CheckList check_stage_equality(const StagePipeline& pipe, const StageCheckOptions& opt);
// prol = prol1 i1* prol, items (i)-(iv) of the compatible prolongations and
// the relations of j** = i** prol1.
CheckList check_compatible_prolongations(const StagePipeline& pipe, const StageCheckOptions& opt);
// Jq1 and Jq2 as quantum momentum maps, and invariance of *_red1 under the
// residual translations.
CheckList check_stage_momentum_maps(const StagePipeline& pipe, const StageCheckOptions& opt);

}  // namespace qk
