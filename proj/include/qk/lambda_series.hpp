#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qk/multipoly.hpp"

namespace qk {

// Formal series sum_{r=0}^{L} lambda^r c_r, truncated at order L.
class LambdaSeries {
public:
    LambdaSeries(VarList vars, int order);
    LambdaSeries(const MultiPoly& c0, int order);

    static LambdaSeries from_coeffs(std::vector<MultiPoly> coeffs);
    static LambdaSeries constant(VarList vars, int order, const GaussianRational& c);

    const VarList& vars() const { return vars_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const MultiPoly& operator[](int r) const { return coeffs_.at(r); }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
    void set(int r, MultiPoly c);

    bool is_zero() const;
    // Smallest r with a nonzero coefficient; order()+1 for the zero series.
    int valuation() const;

    LambdaSeries& operator+=(const LambdaSeries& o);
    LambdaSeries& operator-=(const LambdaSeries& o);
    friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) { return a += b; }
    friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) { return a -= b; }
    // Truncated Cauchy product with the pointwise product of coefficients.
    friend LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b);
    friend LambdaSeries operator*(const GaussianRational& c, const LambdaSeries& a);
    LambdaSeries operator-() const;

    // Multiply by lambda; the top coefficient falls off.
    LambdaSeries shift() const;
    // Divide by lambda; requires a vanishing lambda^0 coefficient.
    LambdaSeries unshift() const;
    LambdaSeries conj() const;
    // Apply a lambda-independent linear map to every coefficient.
    LambdaSeries map(const std::function<MultiPoly(const MultiPoly&)>& f) const;

    friend bool operator==(const LambdaSeries& a, const LambdaSeries& b);
    friend bool operator!=(const LambdaSeries& a, const LambdaSeries& b) { return !(a == b); }

    // "λ^r:<poly>" for each nonzero order joined by "; ", or "0".
    std::string str() const;

private:
    void require_same(const LambdaSeries& o) const;

    VarList vars_;
    std::vector<MultiPoly> coeffs_;
};

inline int valuation(const LambdaSeries& s) { return s.valuation(); }

}  // namespace qk
