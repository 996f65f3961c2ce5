#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qk/gaussian_rational.hpp"

namespace qk {

// Shared, immutable list of variable names. Two lists are compatible when
// their contents agree.
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
// q1..qn, p1..pn
VarList phase_vars(int n);
// `base` with extra names appended (names already present are skipped).
VarList extend_vars(const VarList& base, const std::vector<std::string>& extra);
bool same_vars(const VarList& a, const VarList& b);

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Exponent = std::vector<int>;

// Graded-lexicographic order, larger monomials first.
struct GrlexDesc {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class MultiPoly {
public:
    using Terms = std::map<Exponent, GaussianRational, GrlexDesc>;

    explicit MultiPoly(VarList vars);

    static MultiPoly constant(VarList vars, const GaussianRational& c);
    static MultiPoly var(VarList vars, const std::string& name);
    static MultiPoly monomial(VarList vars, Exponent e, const GaussianRational& c);

    const VarList& vars() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    int index_of(const std::string& name) const;
    bool has_var(const std::string& name) const;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(int idx) const;
    bool depends_on(int idx) const { return degree_in(idx) > 0; }
    GaussianRational constant_term() const;

    void add_term(const Exponent& e, const GaussianRational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const GaussianRational& c, const MultiPoly& a);
    friend MultiPoly operator*(const MultiPoly& a, const GaussianRational& c) { return c * a; }
    MultiPoly operator-() const;

    MultiPoly conj() const;
    MultiPoly derivative(int idx) const;
    MultiPoly derivative(const std::string& name) const { return derivative(index_of(name)); }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string str() const;

private:
    void require_same(const MultiPoly& o) const;

    VarList vars_;
    Terms terms_;
};

// Ring homomorphism sending each assigned variable to its polynomial and every
// other variable to the variable of the same name in the target list. The
// target list is the common list of the assignments, or `target` if given.
MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignments,
                     VarList target = nullptr);

// Same polynomial over another variable list (matched by name).
MultiPoly change_vars(const MultiPoly& f, const VarList& target);

// Definite integral over t in [0, 1]; the result lives on the list without t.
MultiPoly t_integral(const MultiPoly& f, const std::string& t = "t");

}  // namespace qk
