#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qk/lambda_series.hpp"

namespace qk {

// Seeded sample generator. The raw stream is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; integers in [lo, hi] are taken as
// lo + (x mod (hi - lo + 1)) so that samples are identical on every platform.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    long uniform(long lo, long hi);
    // a/b with a in [-3, 3], b in [1, 3]; imaginary part likewise when complex.
    GaussianRational coefficient(bool complex);

    // Random polynomial in the variables `allowed` (indices into vars) of total
    // degree <= max_degree, with up to `max_terms` terms.
    MultiPoly poly(const VarList& vars, const std::vector<int>& allowed, int max_degree,
                   int max_terms = 4, bool complex = true);
    // Series with random coefficients up to lambda^max_lambda (rest zero).
    LambdaSeries series(const VarList& vars, const std::vector<int>& allowed, int max_degree, int order,
                        int max_lambda = 1, bool complex = true);

private:
    std::mt19937_64 eng_;
};

// Indices 0..vars->size()-1.
std::vector<int> all_indices(const VarList& vars);

}  // namespace qk
