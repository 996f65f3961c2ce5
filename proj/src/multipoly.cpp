#include "qk/multipoly.hpp"

#include <algorithm>
#include <numeric>

namespace qk {

VarList make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarList phase_vars(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("q" + std::to_string(i));
    for (int i = 1; i <= n; ++i) v.push_back("p" + std::to_string(i));
    return make_vars(std::move(v));
}

VarList extend_vars(const VarList& base, const std::vector<std::string>& extra) {
    std::vector<std::string> v = *base;
    for (const auto& e : extra)
        if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(e);
    return make_vars(std::move(v));
}

bool same_vars(const VarList& a, const VarList& b) {
    return a == b || *a == *b;
}

bool GrlexDesc::operator()(const Exponent& a, const Exponent& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return a > b;
}

MultiPoly::MultiPoly(VarList vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(VarList vars, const GaussianRational& c) {
    MultiPoly r(vars);
    r.add_term(Exponent(r.nvars(), 0), c);
    return r;
}

MultiPoly MultiPoly::var(VarList vars, const std::string& name) {
    MultiPoly r(vars);
    Exponent e(r.nvars(), 0);
    e[r.index_of(name)] = 1;
    r.add_term(e, 1);
    return r;
}

MultiPoly MultiPoly::monomial(VarList vars, Exponent e, const GaussianRational& c) {
    MultiPoly r(vars);
    if (e.size() != r.nvars()) throw DimensionError("monomial: exponent length mismatch");
    for (int x : e)
        if (x < 0) throw DimensionError("monomial: negative exponent");
    r.add_term(e, c);
    return r;
}

int MultiPoly::index_of(const std::string& name) const {
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end()) throw DimensionError("unknown variable '" + name + "'");
    return static_cast<int>(it - vars_->begin());
}

bool MultiPoly::has_var(const std::string& name) const {
    return std::find(vars_->begin(), vars_->end(), name) != vars_->end();
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int MultiPoly::degree_in(int idx) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return d;
}

GaussianRational MultiPoly::constant_term() const {
    auto it = terms_.find(Exponent(nvars(), 0));
    return it == terms_.end() ? GaussianRational() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::require_same(const MultiPoly& o) const {
    if (!same_vars(vars_, o.vars_)) throw DimensionError("variable lists differ");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_same(b);
    MultiPoly r(a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly operator*(const GaussianRational& c, const MultiPoly& a) {
    MultiPoly r(a.vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * x);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    return GaussianRational(-1) * *this;
}

MultiPoly MultiPoly::conj() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c.conj());
    return r;
}

MultiPoly MultiPoly::derivative(int idx) const {
    if (idx < 0 || idx >= static_cast<int>(nvars())) throw DimensionError("derivative: bad index");
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponent f = e;
        --f[idx];
        r.add_term(f, c * GaussianRational(e[idx]));
    }
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    a.require_same(b);
    return a.terms_ == b.terms_;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += "[" + c.str() + "]";
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            out += "*" + (*vars_)[k];
            if (e[k] > 1) out += "^" + std::to_string(e[k]);
        }
    }
    return out;
}

MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignments,
                     VarList target) {
    if (!target) target = assignments.empty() ? f.vars() : assignments.begin()->second.vars();
    const std::size_t n = f.nvars();
    std::vector<MultiPoly> images;
    images.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::string& name = (*f.vars())[k];
        auto it = assignments.find(name);
        if (it != assignments.end()) {
            if (!same_vars(it->second.vars(), target))
                throw DimensionError("substitute: assignment for '" + name + "' uses another variable list");
            images.push_back(it->second);
        } else if (f.degree_in(static_cast<int>(k)) > 0) {
            images.push_back(MultiPoly::var(target, name));
        } else {
            images.emplace_back(target);
        }
    }
    for (const auto& [name, poly] : assignments) {
        if (!f.has_var(name)) throw DimensionError("substitute: unknown variable '" + name + "'");
    }
    // powers[k][m] = images[k]^m, filled lazily
    std::vector<std::vector<MultiPoly>> powers(n);
    auto power = [&](std::size_t k, int m) -> const MultiPoly& {
        auto& pk = powers[k];
        if (pk.empty()) pk.push_back(MultiPoly::constant(target, 1));
        while (static_cast<int>(pk.size()) <= m) pk.push_back(pk.back() * images[k]);
        return pk[m];
    };
    MultiPoly result(target);
    for (const auto& [e, c] : f.terms()) {
        MultiPoly term = MultiPoly::constant(target, c);
        for (std::size_t k = 0; k < n; ++k)
            if (e[k] > 0) term = term * power(k, e[k]);
        result += term;
    }
    return result;
}

MultiPoly change_vars(const MultiPoly& f, const VarList& target) {
    if (same_vars(f.vars(), target)) return f;
    std::vector<int> map(f.nvars(), -1);
    for (std::size_t k = 0; k < f.nvars(); ++k) {
        auto it = std::find(target->begin(), target->end(), (*f.vars())[k]);
        if (it != target->end()) map[k] = static_cast<int>(it - target->begin());
    }
    MultiPoly r(target);
    for (const auto& [e, c] : f.terms()) {
        Exponent g(target->size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (map[k] < 0) throw DimensionError("change_vars: '" + (*f.vars())[k] + "' missing in target");
            g[map[k]] = e[k];
        }
        r.add_term(g, c);
    }
    return r;
}

MultiPoly t_integral(const MultiPoly& f, const std::string& t) {
    const int ti = f.index_of(t);
    std::vector<std::string> rest;
    for (std::size_t k = 0; k < f.nvars(); ++k)
        if (static_cast<int>(k) != ti) rest.push_back((*f.vars())[k]);
    MultiPoly r(make_vars(std::move(rest)));
    for (const auto& [e, c] : f.terms()) {
        Exponent g;
        g.reserve(e.size() - 1);
        for (std::size_t k = 0; k < e.size(); ++k)
            if (static_cast<int>(k) != ti) g.push_back(e[k]);
        r.add_term(g, c / GaussianRational(e[ti] + 1));
    }
    return r;
}

}  // namespace qk
