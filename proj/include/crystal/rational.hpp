#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "crystal/errors.hpp"

namespace crystal {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (mpq canonical form).
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}           // NOLINT: implicit by design
    Rat(int n) : v_(n) {}            // NOLINT
    Rat(long num, long den) {
        if (den == 0) throw division_by_zero();
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
    explicit Rat(const mpz_class& n) : v_(n) {}

    // Accepts "num", "num/den", optional leading '-'.
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(mpq_class(mpz_class(s)));
            mpz_class num(s.substr(0, slash));
            mpz_class den(s.substr(slash + 1));
            if (den == 0) throw division_by_zero();
            mpq_class q(num, den);
            q.canonicalize();
            return Rat(std::move(q));
        } catch (const std::invalid_argument&) {
            throw domain_error("cannot parse rational: " + s);
        }
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }
    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw division_by_zero();
        return Rat(mpq_class(a.v_ / b.v_));
    }

    Rat& operator+=(const Rat& b) { v_ += b.v_; return *this; }
    Rat& operator-=(const Rat& b) { v_ -= b.v_; return *this; }
    Rat& operator*=(const Rat& b) { v_ *= b.v_; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    std::string to_string() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.to_string();
    }

    // Exact square root if this is a perfect square of a rational.
    std::optional<Rat> sqrt_exact() const {
        if (sign() < 0) return std::nullopt;
        mpz_class n = num(), d = den();
        mpz_class sn, sd, rem;
        mpz_sqrtrem(sn.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
        if (rem != 0) return std::nullopt;
        mpz_sqrtrem(sd.get_mpz_t(), rem.get_mpz_t(), d.get_mpz_t());
        if (rem != 0) return std::nullopt;
        return Rat(mpq_class(sn, sd));
    }

  private:
    mpq_class v_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

inline Rat pow_int(const Rat& base, long long e) {
    if (e < 0) {
        if (base.is_zero()) throw division_by_zero();
        return pow_int(Rat(1) / base, -e);
    }
    Rat r(1), b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat factorial_rat(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

inline Rat binomial_rat(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(b);
}

} // namespace crystal
