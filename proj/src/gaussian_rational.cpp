#include "qk/gaussian_rational.hpp"

#include <stdexcept>

namespace qk {

GaussianRational GaussianRational::frac(long num, long den, long inum, long iden) {
    if (den == 0 || iden == 0) throw std::domain_error("GaussianRational: zero denominator");
    return {mpq_class(num, den), mpq_class(inum, iden)};
}

GaussianRational GaussianRational::inverse() const {
    mpq_class n = re_ * re_ + im_ * im_;
    if (sgn(n) == 0) throw std::domain_error("GaussianRational: division by zero");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = m;
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

std::string GaussianRational::str() const {
    auto part = [](const mpq_class& q) {
        return "(" + q.get_num().get_str() + "/" + q.get_den().get_str() + ")";
    };
    return part(re_) + "+" + part(im_) + "i";
}

}  // namespace qk
