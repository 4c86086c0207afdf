#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "crystal/errors.hpp"
#include "crystal/useries.hpp"

namespace crystal {

// Q-graded series: a truncated Laurent polynomial in Q whose coefficients are
// u-series. Degrees >= q_cutoff are unknown and discarded; negative degrees
// are allowed (window matrices carry Q^n for n < 0) and stored exactly.
// All stored coefficients share one u-cutoff.
class QPoly {
  public:
    using exp_t = std::int64_t;
    static constexpr exp_t kInf = USeries::kInf;

    QPoly() : qcut_(kInf), ucut_(USeries::kInf) {}
    explicit QPoly(const USeries& s) : qcut_(kInf), ucut_(s.cutoff()) {
        if (!s.is_zero()) c_.emplace(0, s);
    }
    explicit QPoly(const Rat& r) : QPoly(USeries(r)) {}

    static QPoly zero(exp_t qcut = kInf, USeries::exp_t ucut = USeries::kInf) {
        QPoly p;
        p.qcut_ = qcut;
        p.ucut_ = ucut;
        return p;
    }
    static QPoly one() { return QPoly(USeries::one()); }
    static QPoly q_monomial(exp_t qdeg, const USeries& coeff,
                            exp_t qcut = kInf) {
        QPoly p;
        p.qcut_ = qcut;
        p.ucut_ = coeff.cutoff();
        if (!coeff.is_zero() && qdeg < qcut) p.c_.emplace(qdeg, coeff);
        return p;
    }

    const std::map<exp_t, USeries>& coeffs() const { return c_; }
    exp_t q_cutoff() const { return qcut_; }
    USeries::exp_t u_cutoff() const { return ucut_; }
    bool is_zero() const { return c_.empty(); }

    exp_t qord_or_cutoff() const { return c_.empty() ? qcut_ : c_.begin()->first; }

    // Lowest u-order over all stored coefficients (u-cutoff if none stored).
    USeries::exp_t uord_or_cutoff() const {
        USeries::exp_t m = ucut_;
        for (const auto& [d, s] : c_) m = std::min(m, s.ord_or_cutoff());
        return m;
    }

    USeries coeff(exp_t qdeg) const {
        auto it = c_.find(qdeg);
        if (it != c_.end()) return it->second;
        return USeries::zero(ucut_);
    }

    QPoly truncated(exp_t qcut, USeries::exp_t ucut) const {
        QPoly r;
        r.qcut_ = std::min(qcut_, qcut);
        r.ucut_ = std::min(ucut_, ucut);
        for (const auto& [d, s] : c_) {
            if (d >= r.qcut_) continue;
            USeries t = s.truncated(r.ucut_);
            if (!t.is_zero()) r.c_.emplace(d, t);
        }
        return r;
    }

    friend QPoly operator-(const QPoly& a) {
        QPoly r;
        r.qcut_ = a.qcut_;
        r.ucut_ = a.ucut_;
        for (const auto& [d, s] : a.c_) r.c_.emplace(d, -s);
        return r;
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.qcut_ = std::min(a.qcut_, b.qcut_);
        r.ucut_ = std::min(a.ucut_, b.ucut_);
        auto put = [&r](exp_t d, const USeries& s) {
            if (d >= r.qcut_) return;
            USeries t = s.truncated(r.ucut_);
            if (t.is_zero()) return;
            auto [it, fresh] = r.c_.emplace(d, t);
            if (!fresh) {
                it->second += t;
                if (it->second.is_zero()) r.c_.erase(it);
                else it->second = it->second.truncated(r.ucut_);
            }
        };
        for (const auto& [d, s] : a.c_) put(d, s);
        for (const auto& [d, s] : b.c_) put(d, s);
        return r;
    }

    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.qcut_ = std::min(sat(a.qcut_, b.qord_or_cutoff()),
                           sat(b.qcut_, a.qord_or_cutoff()));
        r.ucut_ = std::min(sat(a.ucut_, b.uord_or_cutoff()),
                           sat(b.ucut_, a.uord_or_cutoff()));
        for (const auto& [da, sa] : a.c_) {
            for (const auto& [db, sb] : b.c_) {
                exp_t d = da + db;
                if (d >= r.qcut_) continue;
                USeries prod = (sa * sb).truncated(r.ucut_);
                if (prod.is_zero()) continue;
                auto [it, fresh] = r.c_.emplace(d, prod);
                if (!fresh) {
                    it->second += prod;
                    if (it->second.is_zero()) r.c_.erase(it);
                }
            }
        }
        return r;
    }

    QPoly& operator+=(const QPoly& b) { *this = *this + b; return *this; }
    QPoly& operator-=(const QPoly& b) { *this = *this - b; return *this; }
    QPoly& operator*=(const QPoly& b) { *this = *this * b; return *this; }

    friend QPoly operator*(const QPoly& a, const Rat& c) {
        QPoly r;
        r.qcut_ = a.qcut_;
        r.ucut_ = a.ucut_;
        if (c.is_zero()) return r;
        for (const auto& [d, s] : a.c_) r.c_.emplace(d, s * c);
        return r;
    }
    friend QPoly operator*(const Rat& c, const QPoly& a) { return a * c; }
    friend QPoly operator*(const QPoly& a, const USeries& s) { return a * QPoly(s); }
    friend QPoly operator*(const USeries& s, const QPoly& a) { return a * QPoly(s); }

    friend bool operator==(const QPoly& a, const QPoly& b) {
        return a.qcut_ == b.qcut_ && a.ucut_ == b.ucut_ && a.c_ == b.c_;
    }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (const auto& [d, s] : c_) {
            if (!out.empty()) out += " + ";
            out += "Q^" + std::to_string(d) + "*(" + s.to_string() + ")";
        }
        return out;
    }

  private:
    static exp_t sat(exp_t a, exp_t b) {
        if (a >= kInf || b >= kInf) return kInf;
        exp_t s = a + b;
        return s >= kInf ? kInf : s;
    }

    std::map<exp_t, USeries> c_;
    exp_t qcut_;
    USeries::exp_t ucut_;
};

inline bool agree(const QPoly& a, const QPoly& b) { return (a - b).is_zero(); }

inline QPoly series_inv(const QPoly& a, QPoly::exp_t qcut = QPoly::kInf) {
    if (a.is_zero()) throw zero_leading_term();
    const QPoly::exp_t d0 = a.qord_or_cutoff();
    const USeries c0 = a.coeff(d0);
    QPoly::exp_t target_qcut = std::min(qcut, a.q_cutoff());
    if (target_qcut >= QPoly::kInf && a.coeffs().size() > 1)
        throw domain_error("inverse is an infinite Q-series; a finite Q-cutoff is required");
    // a = Q^{d0} c0 (1 + y), qord(y) >= 1.
    USeries c0inv = series_inv(c0, a.u_cutoff());
    QPoly y = QPoly::q_monomial(-d0, c0inv, target_qcut) * a - QPoly::one();
    const QPoly::exp_t qt = y.q_cutoff();
    const USeries::exp_t ut = y.u_cutoff();
    QPoly geo = QPoly::one().truncated(qt, ut);
    QPoly pw = geo;
    Rat sign(-1);
    while (true) {
        pw = (pw * y).truncated(qt, ut);
        if (pw.is_zero()) break;
        geo += pw * sign;
        sign = -sign;
    }
    return QPoly::q_monomial(-d0, c0inv) * geo;
}

inline QPoly qpoly_pow(const QPoly& base, long long e) {
    if (e < 0) return qpoly_pow(series_inv(base), -e);
    QPoly r = QPoly::one().truncated(base.q_cutoff(), base.u_cutoff());
    QPoly b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        if ((e >>= 1) > 0) b *= b;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const QPoly& p) {
    return os << p.to_string();
}

} // namespace crystal
