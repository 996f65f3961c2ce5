#pragma once

#include <gmpxx.h>

#include <string>

namespace qk {

// Element a + b i of Q(i); both parts are kept canonical by GMP.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(const mpq_class& re) : re_(re), im_(0) { re_.canonicalize(); }  // NOLINT
    GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
    static GaussianRational frac(long num, long den, long inum = 0, long iden = 1);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    GaussianRational inverse() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // "(a/b)+(c/d)i"
    std::string str() const;

private:
    mpq_class re_;
    mpq_class im_;
};

}  // namespace qk
