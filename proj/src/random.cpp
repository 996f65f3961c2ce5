#include "qk/random.hpp"

#include <algorithm>

namespace qk {

long SampleRng::uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
}

GaussianRational SampleRng::coefficient(bool complex) {
    auto part = [this] {
        long a = uniform(-3, 3);
        long b = uniform(1, 3);
        return mpq_class(a, b);
    };
    mpq_class re = part();
    mpq_class im = complex ? part() : mpq_class(0);
    if (sgn(re) == 0 && sgn(im) == 0) re = 1;
    return {re, im};
}

MultiPoly SampleRng::poly(const VarList& vars, const std::vector<int>& allowed, int max_degree,
                          int max_terms, bool complex) {
    MultiPoly f(vars);
    const long nterms = uniform(1, max_terms);
    for (long t = 0; t < nterms; ++t) {
        Exponent e(vars->size(), 0);
        const long deg = uniform(0, max_degree);
        for (long d = 0; d < deg && !allowed.empty(); ++d)
            ++e[allowed[static_cast<std::size_t>(uniform(0, static_cast<long>(allowed.size()) - 1))]];
        f.add_term(e, coefficient(complex));
    }
    return f;
}

LambdaSeries SampleRng::series(const VarList& vars, const std::vector<int>& allowed, int max_degree, int order,
                               int max_lambda, bool complex) {
    LambdaSeries s(vars, order);
    for (int r = 0; r <= std::min(order, max_lambda); ++r) s.set(r, poly(vars, allowed, max_degree, 3, complex));
    return s;
}

std::vector<int> all_indices(const VarList& vars) {
    std::vector<int> v(vars->size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<int>(k);
    return v;
}

}  // namespace qk
