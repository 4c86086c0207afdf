#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "crystal/errors.hpp"
#include "crystal/scalars.hpp"

namespace crystal {

// Declared support of a Z x Z operator: entries vanish outside
// -lower <= j - i <= upper. kUnbounded caps at the window width.
struct BandProfile {
    static constexpr long kUnbounded = 1L << 40;
    long lower = 0;
    long upper = 0;
};

// Dense window [lo, hi]^2 of a Z x Z matrix with trusted-core tracking.
// Entries inside [lo+guard_lo, hi-guard_hi] are unaffected by the window
// truncation (given the band profiles of everything composed so far); every
// residual is evaluated on trusted cores only.
template <class S>
class WindowMatrix {
  public:
    WindowMatrix() : lo_(0), hi_(-1) {}
    WindowMatrix(long lo, long hi)
        : lo_(lo), hi_(hi), e_(static_cast<size_t>(width()) * width()) {}

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    long width() const { return hi_ - lo_ + 1; }
    long guard_lo() const { return guard_lo_; }
    long guard_hi() const { return guard_hi_; }
    const BandProfile& band() const { return band_; }

    void set_band(BandProfile b) { band_ = b; }
    void set_guards(long glo, long ghi) {
        guard_lo_ = glo;
        guard_hi_ = ghi;
    }

    long core_lo() const { return lo_ + guard_lo_; }
    long core_hi() const { return hi_ - guard_hi_; }
    bool core_empty() const { return core_lo() > core_hi(); }

    const S& at(long i, long j) const {
        return e_[static_cast<size_t>(i - lo_) * width() + static_cast<size_t>(j - lo_)];
    }
    S& at(long i, long j) {
        return e_[static_cast<size_t>(i - lo_) * width() + static_cast<size_t>(j - lo_)];
    }
    bool in_window(long i) const { return i >= lo_ && i <= hi_; }

    static WindowMatrix identity(long lo, long hi, const S& one) {
        WindowMatrix m(lo, hi);
        for (long i = lo; i <= hi; ++i) m.at(i, i) = one;
        m.band_ = {0, 0};
        return m;
    }

    static WindowMatrix from_diag(long lo, long hi, const std::function<S(long)>& f) {
        WindowMatrix m(lo, hi);
        for (long i = lo; i <= hi; ++i) m.at(i, i) = f(i);
        m.band_ = {0, 0};
        return m;
    }

    // entry (i, i + d) = f(i, d) on the declared band
    static WindowMatrix from_band(long lo, long hi, BandProfile band,
                                  const std::function<S(long, long)>& f) {
        WindowMatrix m(lo, hi);
        for (long i = lo; i <= hi; ++i) {
            long dmin = std::max(-band.lower, lo - i);
            long dmax = std::min(band.upper, hi - i);
            for (long d = dmin; d <= dmax; ++d) m.at(i, i + d) = f(i, d);
        }
        m.band_ = band;
        return m;
    }

    friend WindowMatrix operator+(const WindowMatrix& a, const WindowMatrix& b) {
        check_same(a, b);
        WindowMatrix r(a.lo_, a.hi_);
        for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        r.band_ = {std::max(a.band_.lower, b.band_.lower),
                   std::max(a.band_.upper, b.band_.upper)};
        r.guard_lo_ = std::max(a.guard_lo_, b.guard_lo_);
        r.guard_hi_ = std::max(a.guard_hi_, b.guard_hi_);
        return r;
    }

    friend WindowMatrix operator-(const WindowMatrix& a, const WindowMatrix& b) {
        check_same(a, b);
        WindowMatrix r(a.lo_, a.hi_);
        for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        r.band_ = {std::max(a.band_.lower, b.band_.lower),
                   std::max(a.band_.upper, b.band_.upper)};
        r.guard_lo_ = std::max(a.guard_lo_, b.guard_lo_);
        r.guard_hi_ = std::max(a.guard_hi_, b.guard_hi_);
        return r;
    }

    long eff_upper() const { return std::min(band_.upper, width()); }
    long eff_lower() const { return std::min(band_.lower, width()); }

  private:
    static void check_same(const WindowMatrix& a, const WindowMatrix& b) {
        if (a.lo_ != b.lo_ || a.hi_ != b.hi_) throw window_mismatch();
    }

    long lo_, hi_;
    long guard_lo_ = 0, guard_hi_ = 0;
    BandProfile band_;
    std::vector<S> e_;
};

// Matrix product with band-pruned loops. Missing out-of-window summands can
// only hit entries within min(effU(a), effL(b)) of the top edge (and the
// mirrored bound at the bottom), which is what the guard update records.
template <class S>
WindowMatrix<S> compose(const WindowMatrix<S>& a, const WindowMatrix<S>& b) {
    if (a.lo() != b.lo() || a.hi() != b.hi()) throw window_mismatch();
    const long lo = a.lo(), hi = a.hi();
    WindowMatrix<S> r(lo, hi);
    for (long i = lo; i <= hi; ++i) {
        long kmin = std::max(lo, i - a.eff_lower());
        long kmax = std::min(hi, i + a.eff_upper());
        for (long k = kmin; k <= kmax; ++k) {
            const S& av = a.at(i, k);
            if (av.is_zero()) continue;
            long jmin = std::max(lo, k - b.eff_lower());
            long jmax = std::min(hi, k + b.eff_upper());
            for (long j = jmin; j <= jmax; ++j) {
                const S& bv = b.at(k, j);
                if (bv.is_zero()) continue;
                r.at(i, j) += av * bv;
            }
        }
    }
    BandProfile band;
    band.lower = std::min(a.band().lower + b.band().lower, BandProfile::kUnbounded);
    band.upper = std::min(a.band().upper + b.band().upper, BandProfile::kUnbounded);
    r.set_band(band);
    long spill_hi = std::max(0L, std::min(a.eff_upper(), b.eff_lower()));
    long spill_lo = std::max(0L, std::min(a.eff_lower(), b.eff_upper()));
    r.set_guards(std::max(a.guard_lo(), b.guard_lo()) + spill_lo,
                 std::max(a.guard_hi(), b.guard_hi()) + spill_hi);
    return r;
}

template <class S>
WindowMatrix<S> compose(const WindowMatrix<S>& a, const WindowMatrix<S>& b,
                        const WindowMatrix<S>& c) {
    return compose(compose(a, b), c);
}

// Inverse of a unit-lower-triangular window: forward substitution, exact on
// the whole window (triangular locality), guards unchanged.
template <class S, class Cx>
WindowMatrix<S> invert_unit_lower(const Cx& cx, const WindowMatrix<S>& m) {
    const long lo = m.lo(), hi = m.hi();
    WindowMatrix<S> r(lo, hi);
    for (long j = lo; j <= hi; ++j) {
        r.at(j, j) = cx.one();
        for (long i = j + 1; i <= hi; ++i) {
            S acc = cx.zero();
            long kmin = std::max(j, i - m.eff_lower());
            for (long k = kmin; k < i; ++k) {
                if (m.at(i, k).is_zero() || r.at(k, j).is_zero()) continue;
                acc += m.at(i, k) * r.at(k, j);
            }
            r.at(i, j) = -acc;
        }
    }
    r.set_band({BandProfile::kUnbounded, 0});
    r.set_guards(m.guard_lo(), m.guard_hi());
    return r;
}

// Inverse of an upper-triangular window with invertible diagonal.
template <class S, class Cx>
WindowMatrix<S> invert_upper(const Cx& cx, const WindowMatrix<S>& m) {
    const long lo = m.lo(), hi = m.hi();
    WindowMatrix<S> r(lo, hi);
    std::vector<S> dinv;
    for (long i = lo; i <= hi; ++i) dinv.push_back(scalar_inv(cx, m.at(i, i)));
    for (long j = hi; j >= lo; --j) {
        r.at(j, j) = dinv[static_cast<size_t>(j - lo)];
        for (long i = j - 1; i >= lo; --i) {
            S acc = cx.zero();
            long kmax = std::min(j, i + m.eff_upper());
            for (long k = i + 1; k <= kmax; ++k) {
                if (m.at(i, k).is_zero() || r.at(k, j).is_zero()) continue;
                acc += m.at(i, k) * r.at(k, j);
            }
            r.at(i, j) = -(dinv[static_cast<size_t>(i - lo)] * acc);
        }
    }
    r.set_band({0, BandProfile::kUnbounded});
    r.set_guards(m.guard_lo(), m.guard_hi());
    return r;
}

// All stored content of the difference vanishes on the joint trusted core.
template <class S>
bool zero_on_core(const WindowMatrix<S>& diff, std::string* where = nullptr) {
    if (diff.core_empty()) throw empty_trusted_core();
    for (long i = diff.core_lo(); i <= diff.core_hi(); ++i) {
        for (long j = diff.core_lo(); j <= diff.core_hi(); ++j) {
            if (!diff.at(i, j).is_zero()) {
                if (where)
                    *where = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    }
    return true;
}

// Basic operator windows.
enum class BasicKind { Shift, Delta, QDelta, QDeltaSq, CapQDelta };

template <class Cx>
WindowMatrix<typename Cx::scalar> make_basic(const Cx& cx, long lo, long hi,
                                             BasicKind kind, long k = 1,
                                             int sigma = +1) {
    using S = typename Cx::scalar;
    switch (kind) {
        case BasicKind::Shift: {
            WindowMatrix<S> m(lo, hi);
            for (long i = lo; i <= hi; ++i)
                if (i + k >= lo && i + k <= hi) m.at(i, i + k) = cx.one();
            m.set_band(k >= 0 ? BandProfile{-k, k} : BandProfile{-k, k});
            return m;
        }
        case BasicKind::Delta:
            return WindowMatrix<S>::from_diag(lo, hi,
                                              [&cx](long n) { return cx.from_rat(Rat(n)); });
        case BasicKind::QDelta:
            return WindowMatrix<S>::from_diag(
                lo, hi, [&cx, k](long n) { return cx.q_pow(k * n); });
        case BasicKind::QDeltaSq:
            return WindowMatrix<S>::from_diag(
                lo, hi, [&cx, sigma](long n) { return cx.u_pow(sigma * n * n); });
        case BasicKind::CapQDelta:
            return WindowMatrix<S>::from_diag(lo, hi,
                                              [&cx](long n) { return cx.Q_pow(n); });
    }
    throw domain_error("unknown basic kind");
}

} // namespace crystal
