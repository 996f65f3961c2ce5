#pragma once

#include <vector>

#include "qk/lambda_series.hpp"

namespace qk {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

RationalMatrix invert(const RationalMatrix& m);

// Flat phase space R^{2n} with coordinates x = (q1..qn, p1..pn) and a constant
// symplectic form omega = 1/2 omega_{rs} dx^r ^ dx^s.
class PhaseSpace {
public:
    // omega = dq^i ^ dp_i
    static PhaseSpace canonical(int n);
    // omega = dq^i ^ dp_i + b dq^a ^ dq^c (a, c are 1-based configuration indices)
    static PhaseSpace magnetic(int n, int a, int c, const mpq_class& b);

    int n() const { return n_; }
    const VarList& vars() const { return vars_; }
    int q(int i) const { return i - 1; }      // variable index of q_i
    int p(int i) const { return n_ + i - 1; }  // variable index of p_i
    const RationalMatrix& omega() const { return omega_; }
    const RationalMatrix& omega_inv() const { return omega_inv_; }

    // {f, g} = -omega^{rs} d_r f d_s g; for the canonical form this is
    // sum_i (d_qi f d_pi g - d_pi f d_qi g).
    MultiPoly bracket(const MultiPoly& f, const MultiPoly& g) const;
    LambdaSeries bracket(const LambdaSeries& f, const LambdaSeries& g) const;

private:
    PhaseSpace(int n, RationalMatrix omega);

    int n_;
    VarList vars_;
    RationalMatrix omega_;
    RationalMatrix omega_inv_;
};

LambdaSeries poisson_bracket(const LambdaSeries& f, const LambdaSeries& g, const PhaseSpace& space);

// Bilinear extension of a coefficientwise bracket to lambda-series.
LambdaSeries bilinear_series(const LambdaSeries& f, const LambdaSeries& g,
                             const std::function<MultiPoly(const MultiPoly&, const MultiPoly&)>& op);

}  // namespace qk
