#include "qk/phase_space.hpp"

#include <stdexcept>

namespace qk {

RationalMatrix invert(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix a = m;
    RationalMatrix inv(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) throw std::domain_error("invert: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        mpq_class d = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= d;
            inv[col][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            mpq_class f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

PhaseSpace::PhaseSpace(int n, RationalMatrix omega)
    : n_(n), vars_(phase_vars(n)), omega_(std::move(omega)), omega_inv_(invert(omega_)) {}

PhaseSpace PhaseSpace::canonical(int n) {
    if (n < 1) throw std::invalid_argument("PhaseSpace: n must be positive");
    RationalMatrix w(2 * n, std::vector<mpq_class>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        w[i][n + i] = 1;
        w[n + i][i] = -1;
    }
    return PhaseSpace(n, std::move(w));
}

PhaseSpace PhaseSpace::magnetic(int n, int a, int c, const mpq_class& b) {
    if (a < 1 || a > n || c < 1 || c > n || a == c)
        throw std::invalid_argument("PhaseSpace::magnetic: bad coordinate pair");
    PhaseSpace base = canonical(n);
    RationalMatrix w = base.omega_;
    w[a - 1][c - 1] += b;
    w[c - 1][a - 1] -= b;
    return PhaseSpace(n, std::move(w));
}

MultiPoly PhaseSpace::bracket(const MultiPoly& f, const MultiPoly& g) const {
    if (!same_vars(f.vars(), vars_) || !same_vars(g.vars(), vars_))
        throw DimensionError("Poisson bracket: variables do not match the phase space");
    const int m = 2 * n_;
    std::vector<MultiPoly> df, dg;
    for (int r = 0; r < m; ++r) {
        df.push_back(f.derivative(r));
        dg.push_back(g.derivative(r));
    }
    MultiPoly out(vars_);
    for (int r = 0; r < m; ++r) {
        if (df[r].is_zero()) continue;
        for (int s = 0; s < m; ++s) {
            if (sgn(omega_inv_[r][s]) == 0 || dg[s].is_zero()) continue;
            out -= GaussianRational(omega_inv_[r][s]) * (df[r] * dg[s]);
        }
    }
    return out;
}

LambdaSeries bilinear_series(const LambdaSeries& f, const LambdaSeries& g,
                             const std::function<MultiPoly(const MultiPoly&, const MultiPoly&)>& op) {
    if (f.order() != g.order()) throw DimensionError("bracket: truncation orders differ");
    LambdaSeries out(f.vars(), f.order());
    for (int a = 0; a <= f.order(); ++a) {
        if (f[a].is_zero()) continue;
        for (int b = 0; a + b <= f.order(); ++b) {
            if (g[b].is_zero()) continue;
            out.set(a + b, out[a + b] + op(f[a], g[b]));
        }
    }
    return out;
}

LambdaSeries PhaseSpace::bracket(const LambdaSeries& f, const LambdaSeries& g) const {
    return bilinear_series(f, g, [this](const MultiPoly& x, const MultiPoly& y) { return bracket(x, y); });
}

LambdaSeries poisson_bracket(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space) {
    return space.bracket(f, g);
}

}  // namespace qk
