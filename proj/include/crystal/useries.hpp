#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "crystal/errors.hpp"
#include "crystal/rational.hpp"

namespace crystal {

// Truncated Laurent series in u = q^{1/2} with exact rational coefficients.
//
// A value represents "stored terms + O(u^cutoff)": every exponent >= cutoff
// is unknown and discarded. The cutoff is part of the value, and binary
// operations take the tightest cutoff the inputs justify, so precision loss
// is always explicit. Exponents may be negative (finite Laurent tail).
// Working in u keeps every exponent of q^{1/2}, q^{n^2/2}, ... integral.
class USeries {
  public:
    using exp_t = std::int64_t;
    static constexpr exp_t kInf = static_cast<exp_t>(1) << 50;

    USeries() : cutoff_(kInf) {}
    explicit USeries(Rat c) : cutoff_(kInf) {
        if (!c.is_zero()) terms_.emplace(0, std::move(c));
    }

    static USeries zero(exp_t cutoff = kInf) {
        USeries s;
        s.cutoff_ = cutoff;
        return s;
    }
    static USeries one() { return USeries(Rat(1)); }
    static USeries monomial(exp_t e, Rat c = Rat(1), exp_t cutoff = kInf) {
        USeries s;
        s.cutoff_ = cutoff;
        if (!c.is_zero() && e < cutoff) s.terms_.emplace(e, std::move(c));
        return s;
    }

    const std::map<exp_t, Rat>& terms() const { return terms_; }
    exp_t cutoff() const { return cutoff_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_exact() const { return cutoff_ >= kInf; }

    // Lowest stored exponent; cutoff for an empty series (true order is >= cutoff).
    exp_t ord_or_cutoff() const { return terms_.empty() ? cutoff_ : terms_.begin()->first; }

    Rat coeff(exp_t e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    USeries truncated(exp_t c) const {
        USeries r;
        r.cutoff_ = std::min(cutoff_, c);
        for (const auto& [e, v] : terms_)
            if (e < r.cutoff_) r.terms_.emplace(e, v);
        return r;
    }

    friend USeries operator-(const USeries& a) {
        USeries r;
        r.cutoff_ = a.cutoff_;
        for (const auto& [e, v] : a.terms_) r.terms_.emplace(e, -v);
        return r;
    }

    friend USeries operator+(const USeries& a, const USeries& b) {
        USeries r;
        r.cutoff_ = std::min(a.cutoff_, b.cutoff_);
        for (const auto& [e, v] : a.terms_)
            if (e < r.cutoff_) r.terms_.emplace(e, v);
        for (const auto& [e, v] : b.terms_) {
            if (e >= r.cutoff_) continue;
            auto [it, fresh] = r.terms_.emplace(e, v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }

    friend USeries operator-(const USeries& a, const USeries& b) { return a + (-b); }

    friend USeries operator*(const USeries& a, const USeries& b) {
        USeries r;
        r.cutoff_ = std::min(sat_add(a.cutoff_, b.ord_or_cutoff()),
                             sat_add(b.cutoff_, a.ord_or_cutoff()));
        for (const auto& [ea, va] : a.terms_) {
            for (const auto& [eb, vb] : b.terms_) {
                exp_t e = ea + eb;
                if (e >= r.cutoff_) continue;
                auto [it, fresh] = r.terms_.emplace(e, va * vb);
                if (!fresh) {
                    it->second += va * vb;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    USeries& operator+=(const USeries& b) { *this = *this + b; return *this; }
    USeries& operator-=(const USeries& b) { *this = *this - b; return *this; }
    USeries& operator*=(const USeries& b) { *this = *this * b; return *this; }

    friend USeries operator*(const USeries& a, const Rat& c) {
        USeries r;
        r.cutoff_ = a.cutoff_;
        if (c.is_zero()) return r;
        for (const auto& [e, v] : a.terms_) r.terms_.emplace(e, v * c);
        return r;
    }
    friend USeries operator*(const Rat& c, const USeries& a) { return a * c; }

    // Representation equality: same stored terms and same cutoff.
    friend bool operator==(const USeries& a, const USeries& b) {
        return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const USeries& a, const USeries& b) { return !(a == b); }

    std::string to_string() const;

  private:
    static exp_t sat_add(exp_t a, exp_t b) {
        if (a >= kInf || b >= kInf) return kInf;
        exp_t s = a + b;
        return s >= kInf ? kInf : s;
    }

    std::map<exp_t, Rat> terms_;
    exp_t cutoff_;
};

// a and b agree on every order both claim to know.
inline bool agree(const USeries& a, const USeries& b) { return (a - b).is_zero(); }

inline USeries series_inv(const USeries& a0, USeries::exp_t cutoff = USeries::kInf) {
    USeries a = a0.truncated(cutoff);
    if (a.is_zero()) throw zero_leading_term();
    const USeries::exp_t m = a.ord_or_cutoff();
    const Rat c = a.coeff(m);
    // a = c u^m (1 + x), ord(x) >= 1; invert by geometric series,
    // then scale back by c^{-1} u^{-m}.
    USeries x = (a * (Rat(1) / c)) * USeries::monomial(-m);
    x -= USeries::one();
    if (!x.is_zero() && x.is_exact())
        throw domain_error("inverse is an infinite series; a finite cutoff is required");
    const USeries::exp_t target = x.cutoff();
    USeries geo = USeries::one().truncated(target);
    USeries pw = USeries::one();
    Rat sign(-1);
    while (true) {
        pw = (pw * x).truncated(target);
        if (pw.is_zero()) break;
        geo += pw * sign;
        sign = -sign;
    }
    return geo * USeries::monomial(-m, Rat(1) / c);
}

inline USeries series_exp(const USeries& a0, USeries::exp_t cutoff = USeries::kInf) {
    USeries a = a0.truncated(cutoff);
    if (!a.is_zero() && a.ord_or_cutoff() < 1)
        throw domain_error("series_exp requires order >= 1");
    if (!a.is_zero() && a.is_exact())
        throw domain_error("exponential is an infinite series; a finite cutoff is required");
    const USeries::exp_t target = a.cutoff();
    USeries acc = USeries::one().truncated(target);
    USeries term = USeries::one();
    for (long k = 1;; ++k) {
        term = (term * a).truncated(target);
        term = term * (Rat(1) / Rat(k));
        if (term.is_zero()) break;
        acc += term;
    }
    return acc;
}

inline USeries series_log(const USeries& a0, USeries::exp_t cutoff = USeries::kInf) {
    USeries a = a0.truncated(cutoff);
    if (!(a.coeff(0) == Rat(1)) || a.ord_or_cutoff() < 0)
        throw domain_error("series_log requires constant term 1");
    USeries x = a - USeries::one();
    if (!x.is_zero() && x.is_exact())
        throw domain_error("logarithm is an infinite series; a finite cutoff is required");
    const USeries::exp_t target = a.cutoff();
    USeries acc = USeries::zero(target);
    USeries pw = USeries::one();
    Rat sign(1);
    for (long k = 1;; ++k) {
        pw = (pw * x).truncated(target);
        if (pw.is_zero()) break;
        acc += pw * (sign / Rat(k));
        sign = -sign;
    }
    return acc;
}

inline USeries pow_int(const USeries& base, long long e) {
    if (e < 0) return pow_int(series_inv(base), -e);
    USeries r = USeries::one();
    USeries b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        if ((e >>= 1) > 0) b *= b;
    }
    return r;
}

// Exact partial sum of the stored terms at a rational value of u.
inline Rat eval_stored(const USeries& s, const Rat& u) {
    Rat acc(0);
    for (const auto& [e, v] : s.terms()) acc += v * pow_int(u, e);
    return acc;
}

inline std::string USeries::to_string() const {
    if (terms_.empty()) return is_exact() ? "0" : "O(u^" + std::to_string(cutoff_) + ")";
    std::string out;
    for (const auto& [e, v] : terms_) {
        if (!out.empty()) out += " + ";
        out += v.to_string();
        if (e != 0) out += "*u^" + std::to_string(e);
    }
    if (!is_exact()) out += " + O(u^" + std::to_string(cutoff_) + ")";
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const USeries& s) {
    return os << s.to_string();
}

} // namespace crystal
