#pragma once

#include <cstdint>

#include "crystal/errors.hpp"
#include "crystal/qpoly.hpp"
#include "crystal/rational.hpp"
#include "crystal/useries.hpp"

namespace crystal {

// Every higher-level algorithm is generic over a scalar context: the context
// fixes the coefficient ring and owns the construction of q- and Q-powers.
// Numeric and symbolic modes never mix inside one computation.
//
// Monomials and rational constants are exact values (infinite cutoff); the
// context cutoffs are applied by the expansion routines (inverses, exps,
// infinite products), and the cutoff-propagation rules of the series types
// keep every downstream value honest about what it knows.

// Exact numeric mode: u = q^{1/2} and Q are fixed rationals.
struct NumericScalars {
    using scalar = Rat;
    Rat u;
    Rat Q;

    static constexpr bool symbolic = false;

    scalar from_rat(const Rat& r) const { return r; }
    scalar u_pow(std::int64_t e) const { return pow_int(u, e); }
    scalar q_pow(std::int64_t e) const { return pow_int(u, 2 * e); }
    scalar Q_pow(std::int64_t e) const { return pow_int(Q, e); }
    scalar zero() const { return Rat(0); }
    scalar one() const { return Rat(1); }
    scalar truncate(const scalar& s) const { return s; }

    static NumericScalars from_q(const Rat& q, const Rat& Q) {
        auto u = q.sqrt_exact();
        if (!u) throw domain_error("numeric mode needs q to be the square of a rational");
        return NumericScalars{*u, Q};
    }
};

// Symbolic mode without Q: truncated u-series scalars.
struct SeriesScalars {
    using scalar = USeries;
    USeries::exp_t u_cutoff;

    static constexpr bool symbolic = true;

    scalar from_rat(const Rat& r) const { return USeries(r); }
    scalar u_pow(std::int64_t e) const { return USeries::monomial(e); }
    scalar q_pow(std::int64_t e) const { return USeries::monomial(2 * e); }
    scalar Q_pow(std::int64_t) const {
        throw domain_error("this computation has no Q variable; use a Q-graded context");
    }
    scalar zero() const { return USeries(); }
    scalar one() const { return USeries(Rat(1)); }
    scalar truncate(const scalar& s) const { return s.truncated(u_cutoff); }
};

// Symbolic mode with Q: Q-graded truncated series scalars.
struct QSeriesScalars {
    using scalar = QPoly;
    USeries::exp_t u_cutoff;
    QPoly::exp_t q_cutoff; // Q-degree cutoff

    static constexpr bool symbolic = true;

    scalar from_rat(const Rat& r) const { return QPoly(USeries(r)); }
    scalar u_pow(std::int64_t e) const { return QPoly(USeries::monomial(e)); }
    scalar q_pow(std::int64_t e) const { return QPoly(USeries::monomial(2 * e)); }
    scalar Q_pow(std::int64_t e) const {
        return QPoly::q_monomial(e, USeries::monomial(0));
    }
    scalar zero() const { return QPoly(); }
    scalar one() const { return QPoly(USeries(Rat(1))); }
    scalar truncate(const scalar& s) const { return s.truncated(q_cutoff, u_cutoff); }

    SeriesScalars u_only() const { return SeriesScalars{u_cutoff}; }
};

// Coefficient inversion, uniform across scalar types. Symbolic inverses are
// truncated expansions; callers pass the context cutoff where one is needed.
inline Rat scalar_inv(const Rat& r) {
    if (r.is_zero()) throw division_by_zero();
    return Rat(1) / r;
}
inline Rat scalar_inv(const NumericScalars&, const Rat& r) { return scalar_inv(r); }
inline USeries scalar_inv(const SeriesScalars& cx, const USeries& s) {
    return series_inv(s, cx.u_cutoff);
}
inline QPoly scalar_inv(const QSeriesScalars& cx, const QPoly& p) {
    return series_inv(p.truncated(cx.q_cutoff, cx.u_cutoff), cx.q_cutoff);
}

template <class S>
bool scalar_is_zero(const S& s) { return s.is_zero(); }

} // namespace crystal
