#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "crystal/errors.hpp"
#include "crystal/rational.hpp"

namespace crystal {

// Exponent vector over the deformation times (t_1..t_K, tbar_1..tbar_Kb).
struct TMono {
    std::vector<int> e;

    int total() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool operator<(const TMono& o) const { return e < o.e; }
    bool operator==(const TMono& o) const { return e == o.e; }

    static TMono unit(int var, int nvars) {
        TMono m;
        m.e.assign(nvars, 0);
        m.e[var] = 1;
        return m;
    }
    static TMono empty(int nvars) {
        TMono m;
        m.e.assign(nvars, 0);
        return m;
    }
    TMono operator+(const TMono& o) const {
        TMono m = *this;
        for (size_t i = 0; i < e.size(); ++i) m.e[i] += o.e[i];
        return m;
    }
};

// Polynomial in the deformation times, truncated at a hard total degree.
// Coefficients live in C (Rat in numeric mode, USeries/QPoly in symbolic mode).
// The variable layout (how many t's and tbar's) is fixed by the context that
// creates values; all values combined in one computation must share it.
template <class C>
class TPoly {
  public:
    TPoly() : nvars_(0), deg_(0) {}
    TPoly(int nvars, int max_degree) : nvars_(nvars), deg_(max_degree) {}

    static TPoly constant(C c, int nvars, int max_degree) {
        TPoly p(nvars, max_degree);
        if (!c.is_zero()) p.m_.emplace(TMono::empty(nvars), std::move(c));
        return p;
    }
    static TPoly variable(int var, C c, int nvars, int max_degree) {
        TPoly p(nvars, max_degree);
        if (!c.is_zero() && max_degree >= 1)
            p.m_.emplace(TMono::unit(var, nvars), std::move(c));
        return p;
    }

    int nvars() const { return nvars_; }
    int max_degree() const { return deg_; }
    bool is_zero() const { return m_.empty(); }
    const std::map<TMono, C>& terms() const { return m_; }

    C coeff(const TMono& k) const {
        auto it = m_.find(k);
        return it == m_.end() ? C{} : it->second;
    }
    C constant_term() const { return coeff(TMono::empty(nvars_)); }

    friend TPoly operator-(const TPoly& a) {
        TPoly r(a.nvars_, a.deg_);
        for (const auto& [k, v] : a.m_) r.m_.emplace(k, -v);
        return r;
    }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        TPoly r(std::max(a.nvars_, b.nvars_), std::min(a.deg_, b.deg_));
        if (a.m_.empty()) r.deg_ = b.deg_;
        if (b.m_.empty() && !a.m_.empty()) r.deg_ = a.deg_;
        if (!a.m_.empty() && !b.m_.empty()) r.deg_ = std::min(a.deg_, b.deg_);
        for (const auto& [k, v] : a.m_)
            if (k.total() <= r.deg_) r.m_.emplace(pad(k, r.nvars_), v);
        for (const auto& [k, v] : b.m_) {
            if (k.total() > r.deg_) continue;
            auto [it, fresh] = r.m_.emplace(pad(k, r.nvars_), v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) r.m_.erase(it);
            }
        }
        return r;
    }

    friend TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r(std::max(a.nvars_, b.nvars_), std::min(a.deg_, b.deg_));
        for (const auto& [ka, va] : a.m_) {
            for (const auto& [kb, vb] : b.m_) {
                TMono k = pad(ka, r.nvars_) + pad(kb, r.nvars_);
                if (k.total() > r.deg_) continue;
                C prod = va * vb;
                if (prod.is_zero()) continue;
                auto [it, fresh] = r.m_.emplace(std::move(k), prod);
                if (!fresh) {
                    it->second += prod;
                    if (it->second.is_zero()) r.m_.erase(it);
                }
            }
        }
        return r;
    }

    TPoly& operator+=(const TPoly& b) { *this = *this + b; return *this; }
    TPoly& operator-=(const TPoly& b) { *this = *this - b; return *this; }
    TPoly& operator*=(const TPoly& b) { *this = *this * b; return *this; }

    friend TPoly operator*(const TPoly& a, const C& c) {
        TPoly r(a.nvars_, a.deg_);
        for (const auto& [k, v] : a.m_) {
            C p = v * c;
            if (!p.is_zero()) r.m_.emplace(k, std::move(p));
        }
        return r;
    }

    // Substitute t_v -> sigma_v * t_v (used for the alternating inversion
    // iota(t) and for negating the tbar block).
    TPoly scale_vars(const std::vector<Rat>& sigma) const {
        TPoly r(nvars_, deg_);
        for (const auto& [k, v] : m_) {
            Rat f(1);
            for (int i = 0; i < nvars_; ++i)
                if (k.e[i] != 0) f *= pow_int(sigma[i], k.e[i]);
            C p = v * f;
            if (!p.is_zero()) r.m_.emplace(k, std::move(p));
        }
        return r;
    }

    friend bool operator==(const TPoly& a, const TPoly& b) {
        return a.m_ == b.m_;
    }

  private:
    static TMono pad(const TMono& k, int n) {
        if (static_cast<int>(k.e.size()) == n) return k;
        TMono m = k;
        m.e.resize(n, 0);
        return m;
    }

    std::map<TMono, C> m_;
    int nvars_;
    int deg_;
};

template <class C>
    requires(!std::is_same_v<C, Rat>)
TPoly<C> operator*(const TPoly<C>& a, const Rat& c) {
    return a * C(c);
}

// exp of a polynomial with no constant term, truncated at the degree bound.
template <class C>
TPoly<C> tpoly_exp(const TPoly<C>& a, const C& one) {
    if (!a.constant_term().is_zero())
        throw domain_error("tpoly_exp requires zero constant term");
    TPoly<C> acc = TPoly<C>::constant(one, a.nvars(), a.max_degree());
    TPoly<C> term = acc;
    for (int k = 1; k <= a.max_degree(); ++k) {
        term = term * a;
        term = term * (Rat(1) / Rat(k));
        if (term.is_zero()) break;
        acc += term;
    }
    return acc;
}

// Inverse when the constant term is invertible in C; geometric expansion in
// the augmentation ideal, exact at the degree bound. inv_const must satisfy
// constant_term * inv_const = one (the caller owns coefficient inversion).
template <class C>
TPoly<C> tpoly_inv(const TPoly<C>& a, const C& inv_const, const C& one) {
    TPoly<C> x = a * inv_const - TPoly<C>::constant(one, a.nvars(), a.max_degree());
    if (!x.constant_term().is_zero())
        throw domain_error("tpoly_inv: inv_const does not invert the constant term");
    TPoly<C> acc = TPoly<C>::constant(one, a.nvars(), a.max_degree());
    TPoly<C> pw = acc;
    Rat sign(-1);
    for (int k = 1; k <= a.max_degree(); ++k) {
        pw = pw * x;
        if (pw.is_zero()) break;
        acc += pw * sign;
        sign = -sign;
    }
    return acc * inv_const;
}

template <class C>
std::ostream& operator<<(std::ostream& os, const TPoly<C>& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [k, v] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v << ")";
        for (size_t i = 0; i < k.e.size(); ++i)
            if (k.e[i] != 0) os << "*x" << i << "^" << k.e[i];
    }
    return os;
}

} // namespace crystal
