#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "crystal/check_result.hpp"
#include "crystal/errors.hpp"
#include "crystal/scalars.hpp"

namespace crystal {

// One factor (1 + coeff * u^{u_exp})^{outer} of an infinite product.
template <class S>
struct ProductFactor {
    S coeff;
    std::int64_t u_exp;
    std::int64_t outer;
};

template <class Cx>
typename Cx::scalar scalar_pow(const Cx& cx, const typename Cx::scalar& base,
                               std::int64_t e) {
    using S = typename Cx::scalar;
    S b = e < 0 ? scalar_inv(cx, base) : cx.truncate(base);
    std::int64_t n = e < 0 ? -e : e;
    S r = cx.truncate(cx.one());
    while (n > 0) {
        if (n & 1) r *= b;
        if ((n >>= 1) > 0) b *= b;
    }
    return r;
}

// Expand an infinite product given as a factor stream ordered by strictly
// increasing u-order. Consumption stops at the first factor whose order
// reaches the context cutoff: beyond it every factor is 1 + O(u^cutoff).
template <class Cx>
typename Cx::scalar product_truncated(
    const Cx& cx,
    const std::function<std::optional<ProductFactor<typename Cx::scalar>>(long)>& gen) {
    static_assert(Cx::symbolic, "infinite products are expanded in symbolic mode");
    using S = typename Cx::scalar;
    S acc = cx.truncate(cx.one());
    std::int64_t prev = -1;
    bool have_prev = false;
    for (long k = 0;; ++k) {
        auto f = gen(k);
        if (!f) break;
        if (have_prev && f->u_exp <= prev) throw non_terminating();
        prev = f->u_exp;
        have_prev = true;
        if (f->u_exp >= cx.u_cutoff) break;
        S base = cx.one() + f->coeff * cx.u_pow(f->u_exp);
        acc *= scalar_pow(cx, base, f->outer);
    }
    return acc;
}

// MacMahon function prod_{n>=1} (1 - q^n)^{-n} to the given u-cutoff.
inline USeries macmahon_series(USeries::exp_t u_cutoff) {
    SeriesScalars cx{u_cutoff};
    return product_truncated(
        cx, [&cx](long k) -> std::optional<ProductFactor<USeries>> {
            long n = k + 1;
            return ProductFactor<USeries>{cx.from_rat(Rat(-1)), 2 * n, -n};
        });
}

// Coefficients of q^0..q^max_n of the MacMahon function.
inline std::vector<Rat> macmahon_coefficients(long max_n) {
    USeries s = macmahon_series(2 * max_n + 1);
    std::vector<Rat> out;
    for (long n = 0; n <= max_n; ++n) out.push_back(s.coeff(2 * n));
    return out;
}

// Jacobi triple product: checks
//   prod (1-q^n) prod (1+q^{n-1/2} z) prod (1+q^{n-1/2} z^{-1})
//     = sum_{n in Z} q^{n^2/2} z^n
// exactly modulo the u-cutoff, for z-degrees |d| <= z_degree. The internal
// z-window is wider: a z^k contribution carries u-order >= k^2, so degrees
// beyond sqrt(cutoff) cannot feed back below the cutoff.
inline CheckResult triple_product_check(USeries::exp_t cutoff, long z_degree) {
    CheckResult res;
    res.id = "triple-product";
    res.params["u_cutoff"] = std::to_string(cutoff);
    res.params["z_degree"] = std::to_string(z_degree);

    long zb = z_degree + 1;
    while (zb * zb < cutoff) ++zb;

    using ZSeries = std::map<long, USeries>;
    auto mul_factor = [&](ZSeries& s, long zdeg, const USeries& c) {
        // s *= (1 + c * z^zdeg)
        ZSeries add;
        for (const auto& [d, v] : s) {
            long nd = d + zdeg;
            if (nd < -zb || nd > zb) continue;
            USeries t = (v * c).truncated(cutoff);
            if (!t.is_zero()) add[nd] = t;
        }
        for (auto& [d, v] : add) {
            auto [it, fresh] = s.emplace(d, v);
            if (!fresh) it->second += v;
        }
        for (auto it = s.begin(); it != s.end();)
            it = it->second.is_zero() ? s.erase(it) : std::next(it);
    };

    ZSeries lhs;
    lhs[0] = USeries::one().truncated(cutoff);
    for (long n = 1; 2 * n <= cutoff; ++n)
        mul_factor(lhs, 0, USeries::monomial(2 * n, Rat(-1)));
    for (long n = 1; 2 * n - 1 <= cutoff; ++n) {
        mul_factor(lhs, +1, USeries::monomial(2 * n - 1));
        mul_factor(lhs, -1, USeries::monomial(2 * n - 1));
    }

    for (long d = -z_degree; d <= z_degree; ++d) {
        USeries expect = (d * d < cutoff) ? USeries::monomial(d * d, Rat(1), cutoff)
                                          : USeries::zero(cutoff);
        auto it = lhs.find(d);
        USeries got = (it == lhs.end()) ? USeries::zero(cutoff) : it->second.truncated(cutoff);
        USeries diff = got - expect;
        if (!diff.is_zero()) {
            res.fail("z^" + std::to_string(d) + ": " + diff.to_string());
            return res;
        }
    }
    return res;
}

} // namespace crystal
