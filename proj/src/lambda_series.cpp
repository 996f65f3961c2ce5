#include "qk/lambda_series.hpp"

namespace qk {

LambdaSeries::LambdaSeries(VarList vars, int order) : vars_(std::move(vars)) {
    if (order < 0) throw std::invalid_argument("LambdaSeries: negative order");
    coeffs_.assign(order + 1, MultiPoly(vars_));
}

LambdaSeries::LambdaSeries(const MultiPoly& c0, int order) : LambdaSeries(c0.vars(), order) {
    coeffs_[0] = c0;
}

LambdaSeries LambdaSeries::from_coeffs(std::vector<MultiPoly> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("LambdaSeries: no coefficients");
    LambdaSeries s(coeffs[0].vars(), static_cast<int>(coeffs.size()) - 1);
    for (std::size_t r = 0; r < coeffs.size(); ++r) s.set(static_cast<int>(r), std::move(coeffs[r]));
    return s;
}

LambdaSeries LambdaSeries::constant(VarList vars, int order, const GaussianRational& c) {
    return LambdaSeries(MultiPoly::constant(std::move(vars), c), order);
}

void LambdaSeries::set(int r, MultiPoly c) {
    if (!same_vars(c.vars(), vars_)) throw DimensionError("LambdaSeries::set: variable lists differ");
    coeffs_.at(r) = std::move(c);
}

bool LambdaSeries::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

int LambdaSeries::valuation() const {
    for (std::size_t r = 0; r < coeffs_.size(); ++r)
        if (!coeffs_[r].is_zero()) return static_cast<int>(r);
    return order() + 1;
}

void LambdaSeries::require_same(const LambdaSeries& o) const {
    if (order() != o.order()) throw DimensionError("LambdaSeries: truncation orders differ");
    if (!same_vars(vars_, o.vars_)) throw DimensionError("LambdaSeries: variable lists differ");
}

LambdaSeries& LambdaSeries::operator+=(const LambdaSeries& o) {
    require_same(o);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += o.coeffs_[r];
    return *this;
}

LambdaSeries& LambdaSeries::operator-=(const LambdaSeries& o) {
    require_same(o);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] -= o.coeffs_[r];
    return *this;
}

LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b) {
    a.require_same(b);
    LambdaSeries out(a.vars_, a.order());
    const int L = a.order();
    for (int i = 0; i <= L; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= L; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

LambdaSeries operator*(const GaussianRational& c, const LambdaSeries& a) {
    LambdaSeries out(a.vars_, a.order());
    for (std::size_t r = 0; r < a.coeffs_.size(); ++r) out.coeffs_[r] = c * a.coeffs_[r];
    return out;
}

LambdaSeries LambdaSeries::operator-() const {
    return GaussianRational(-1) * *this;
}

LambdaSeries LambdaSeries::shift() const {
    LambdaSeries out(vars_, order());
    for (int r = order(); r >= 1; --r) out.coeffs_[r] = coeffs_[r - 1];
    return out;
}

LambdaSeries LambdaSeries::unshift() const {
    if (!coeffs_[0].is_zero())
        throw std::domain_error("LambdaSeries::unshift: nonzero lambda^0 coefficient " + coeffs_[0].str());
    LambdaSeries out(vars_, order());
    for (int r = 0; r < order(); ++r) out.coeffs_[r] = coeffs_[r + 1];
    return out;
}

LambdaSeries LambdaSeries::conj() const {
    return map([](const MultiPoly& p) { return p.conj(); });
}

LambdaSeries LambdaSeries::map(const std::function<MultiPoly(const MultiPoly&)>& f) const {
    std::vector<MultiPoly> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(f(c));
    return from_coeffs(std::move(cs));
}

bool operator==(const LambdaSeries& a, const LambdaSeries& b) {
    a.require_same(b);
    return a.coeffs_ == b.coeffs_;
}

std::string LambdaSeries::str() const {
    std::string out;
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
        if (coeffs_[r].is_zero()) continue;
        if (!out.empty()) out += "; ";
        out += "λ^" + std::to_string(r) + ":" + coeffs_[r].str();
    }
    return out.empty() ? "0" : out;
}

}  // namespace qk
