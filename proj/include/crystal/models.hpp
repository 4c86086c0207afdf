#pragma once

#include <map>
#include <string>
#include <vector>

#include "crystal/check_result.hpp"
#include "crystal/partition.hpp"
#include "crystal/plane_partition.hpp"
#include "crystal/products.hpp"
#include "crystal/schur.hpp"
#include "crystal/tpoly.hpp"

namespace crystal {

// ---- external potential ----

// Phi_k(lambda, s) = sum_i (q^{k(lambda_i+s-i+1)} - q^{k(s-i+1)})
//                  + (1 - q^{ks}) q^k / (1 - q^k),   k != 0.
// The sum is finite (terms with lambda_i = 0 vanish).
template <class Cx>
typename Cx::scalar phi(const Cx& cx, long k, const Partition& lambda, long s) {
    if (k == 0) throw domain_error("phi needs k != 0");
    auto acc = cx.zero();
    for (size_t i = 1; i <= lambda.length(); ++i) {
        long li = lambda.part(i - 1);
        acc += cx.q_pow(k * (li + s - static_cast<long>(i) + 1));
        acc -= cx.q_pow(k * (s - static_cast<long>(i) + 1));
    }
    auto one_minus_qk = cx.one() - cx.q_pow(k);
    auto frac = (cx.one() - cx.q_pow(k * s)) * scalar_inv(cx, one_minus_qk);
    acc += cx.truncate(frac * cx.q_pow(k));
    return acc;
}

// ---- eigenvalue conventions shared by the tau-function route ----
// (independent of the Fock oracle, which computes windowed mode sums)

inline long l0_value(const Partition& lambda, long s) {
    return lambda.size() + s * (s + 1) / 2;
}

// W0 |lambda,s> eigenvalue; fixes W0 |0,s> = s(s+1)(2s+1)/6.
inline long w0_value(const Partition& lambda, long s) {
    long acc = s * (s + 1) * (2 * s + 1) / 6;
    for (size_t i = 1; i <= lambda.length(); ++i) {
        long a = lambda.part(i - 1) + s - static_cast<long>(i) + 1;
        long b = s - static_cast<long>(i) + 1;
        acc += a * a - b * b;
    }
    return acc;
}

// ---- undeformed partition functions ----

// Brute-force plane-partition counts through q^max_n.
inline std::vector<long> z_brute(long max_n) {
    std::vector<long> counts(static_cast<size_t>(max_n) + 1, 0);
    for (const auto& pp : enumerate_plane_partitions(max_n))
        ++counts[static_cast<size_t>(pp.size())];
    return counts;
}

// Q-graded model: product route prod_n (1 - Q q^n)^{-n} and Schur-sum route
// sum_lambda s_lambda(q^{-rho})^2 Q^{|lambda|}; the modified model replaces
// the square by s_lambda s_{lambda^t} and the product by prod (1 + Q q^n)^{n}.
inline QPoly z_q_product(const QSeriesScalars& cx, bool modified) {
    return product_truncated(
        cx, [&cx, modified](long k) -> std::optional<ProductFactor<QPoly>> {
            long n = k + 1;
            QPoly c = cx.Q_pow(1);
            if (!modified) c = c * Rat(-1);
            return ProductFactor<QPoly>{c, 2 * n, modified ? n : -n};
        });
}

inline QPoly z_q_schur(const QSeriesScalars& cx, bool modified, long max_size) {
    QPoly acc = cx.zero();
    for (const auto& lam : enumerate_partitions(max_size)) {
        USeries a = schur_principal(lam, cx.u_cutoff);
        USeries b = modified ? schur_principal(lam.conjugate(), cx.u_cutoff) : a;
        acc += QPoly::q_monomial(lam.size(), (a * b).truncated(cx.u_cutoff), cx.q_cutoff);
    }
    return acc;
}

// ---- deformation bookkeeping ----

// Variable layout for the deformation times: t_1..t_kmax, tbar_1..tbar_kbar.
struct DeformSpec {
    int kmax = 2;
    int kbar_max = 0;
    int degree = 2;

    int nvars() const { return kmax + kbar_max; }
    int t_var(int k) const { return k - 1; }
    int tbar_var(int k) const { return kmax + k - 1; }
};

// h_j(t) with exp(sum_k t_k z^k) = sum_j h_j(t) z^j, restricted to one block
// of variables, each scaled by `scale`: j h_j = sum_k k (scale t_k) h_{j-k}.
template <class Cx>
std::vector<TPoly<typename Cx::scalar>> schur_h_polys(const Cx& cx, const DeformSpec& sp,
                                                      bool tbar_block, const Rat& scale,
                                                      long jmax) {
    using S = typename Cx::scalar;
    using TP = TPoly<S>;
    std::vector<TP> h;
    h.push_back(TP::constant(cx.one(), sp.nvars(), sp.degree));
    const int kb = tbar_block ? sp.kbar_max : sp.kmax;
    for (long j = 1; j <= jmax; ++j) {
        TP acc(sp.nvars(), sp.degree);
        for (int k = 1; k <= kb && k <= j; ++k) {
            int var = tbar_block ? sp.tbar_var(k) : sp.t_var(k);
            TP tk = TP::variable(var, cx.one(), sp.nvars(), sp.degree);
            acc += tk * h[static_cast<size_t>(j - k)] * (scale * Rat(k));
        }
        h.push_back(acc * (Rat(1, j)));
    }
    return h;
}

// S_mu over one variable block: det(h_{mu_i - i + j}).
template <class Cx>
TPoly<typename Cx::scalar> schur_poly(const Cx& cx, const DeformSpec& sp,
                                      const Partition& mu, bool tbar_block,
                                      const Rat& scale) {
    using S = typename Cx::scalar;
    using TP = TPoly<S>;
    const size_t n = mu.length();
    if (n == 0) return TP::constant(cx.one(), sp.nvars(), sp.degree);
    auto h = schur_h_polys(cx, sp, tbar_block, scale, mu.part(0) + static_cast<long>(n));
    // Laplace expansion along the first column
    std::function<TP(std::vector<std::vector<TP>>)> det =
        [&](std::vector<std::vector<TP>> m) -> TP {
        const size_t d = m.size();
        if (d == 1) return m[0][0];
        TP acc(sp.nvars(), sp.degree);
        for (size_t r = 0; r < d; ++r) {
            if (m[r][0].is_zero()) continue;
            std::vector<std::vector<TP>> minor;
            for (size_t i = 0; i < d; ++i) {
                if (i == r) continue;
                minor.emplace_back(m[i].begin() + 1, m[i].end());
            }
            TP term = m[r][0] * det(std::move(minor));
            acc += (r % 2 == 0) ? term : (term * Rat(-1));
        }
        return acc;
    };
    std::vector<std::vector<TP>> m(n, std::vector<TP>(n, TP(sp.nvars(), sp.degree)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            long idx = mu.part(i) - static_cast<long>(i) + static_cast<long>(j);
            m[i][j] = (idx >= 0 && idx < static_cast<long>(h.size()))
                          ? h[static_cast<size_t>(idx)]
                          : TPoly<S>(sp.nvars(), sp.degree);
        }
    }
    return det(std::move(m));
}

// ---- deformed partition functions ----

// Z(s,t)   = sum_lambda s_lambda^2 Q^{|lambda|+s(s+1)/2} e^{sum t_k Phi_k}
// Z'(s,t,tbar): s_lambda s_{lambda^t} and the extra sum tbar_k Phi_{-k}.
inline TPoly<QPoly> z_deformed(const QSeriesScalars& cx, const DeformSpec& sp,
                               bool modified, long s, long max_size) {
    using TP = TPoly<QPoly>;
    TP acc(sp.nvars(), sp.degree);
    for (const auto& lam : enumerate_partitions(max_size)) {
        USeries a = schur_principal(lam, cx.u_cutoff);
        USeries b = modified ? schur_principal(lam.conjugate(), cx.u_cutoff) : a;
        QPoly weight = QPoly::q_monomial(l0_value(lam, s), (a * b).truncated(cx.u_cutoff),
                                         cx.q_cutoff);
        TP expo(sp.nvars(), sp.degree);
        for (int k = 1; k <= sp.kmax; ++k)
            expo += TP::variable(sp.t_var(k), phi(cx, k, lam, s), sp.nvars(), sp.degree);
        if (modified)
            for (int k = 1; k <= sp.kbar_max; ++k)
                expo += TP::variable(sp.tbar_var(k), phi(cx, -k, lam, s), sp.nvars(),
                                     sp.degree);
        acc += TP::constant(weight, sp.nvars(), sp.degree) * tpoly_exp(expo, cx.one());
    }
    return acc;
}

// ---- tau functions via intermediate-state insertion ----

// <mu,s| G- G+ |nu,s> = sum_{kappa included in both} s_{mu/kappa} s_{nu/kappa}
inline USeries gg_element(const Partition& mu, const Partition& nu,
                          USeries::exp_t cutoff) {
    USeries acc = USeries::zero(cutoff);
    for (const auto& kap : enumerate_partitions(std::min(mu.size(), nu.size()))) {
        if (!mu.contains(kap) || !nu.contains(kap)) continue;
        acc += skew_schur_principal(mu, kap, cutoff) * skew_schur_principal(nu, kap, cutoff);
    }
    return acc.truncated(cutoff);
}

// <nu,s| G'- G'+ |mubar,s> = sum_rho s_{nu^t/rho^t} s_{mubar^t/rho^t}
inline USeries gg_prime_element(const Partition& nu, const Partition& mubar,
                                USeries::exp_t cutoff) {
    return gg_element(nu.conjugate(), mubar.conjugate(), cutoff);
}

// tau(s,t) = <s| e^{sum t_k J_k} g |s>
//          = sum_mu S_mu(t) u^{w0(mu,s)+w0(0,s)}
//            sum_nu Q^{l0(nu,s)} <mu|G-G+|nu> s_nu
inline TPoly<QPoly> tau_1d(const QSeriesScalars& cx, const DeformSpec& sp, long s,
                           long max_size) {
    using TP = TPoly<QPoly>;
    TP acc(sp.nvars(), sp.degree);
    const long mu_bound = static_cast<long>(sp.degree) * sp.kmax;
    for (const auto& mu : enumerate_partitions(mu_bound)) {
        QPoly inner = cx.zero();
        for (const auto& nu : enumerate_partitions(max_size)) {
            USeries el = gg_element(mu, nu, cx.u_cutoff);
            if (el.is_zero()) continue;
            USeries val = (el * schur_principal(nu, cx.u_cutoff)).truncated(cx.u_cutoff);
            inner += QPoly::q_monomial(l0_value(nu, s), val, cx.q_cutoff);
        }
        if (inner.is_zero()) continue;
        QPoly weight = inner * cx.u_pow(w0_value(mu, s) + w0_value(Partition(), s));
        acc += schur_poly(cx, sp, mu, false, Rat(1)) *
               TP::constant(weight, sp.nvars(), sp.degree);
    }
    return acc;
}

// tau'(s,t,tbar) = <s| e^{sum t_k J_k} g' e^{-sum tbar_k J_{-k}} |s>
//   = sum_{mu, mubar} S_mu(t) S_mubar(-tbar) u^{w0(mu,s)-w0(mubar,s)}
//     sum_nu Q^{l0(nu,s)} <mu|G-G+|nu><nu|G'-G'+|mubar>
inline TPoly<QPoly> tau_2d(const QSeriesScalars& cx, const DeformSpec& sp, long s,
                           long max_size) {
    using TP = TPoly<QPoly>;
    TP acc(sp.nvars(), sp.degree);
    const long mu_bound = static_cast<long>(sp.degree) * sp.kmax;
    const long mubar_bound = static_cast<long>(sp.degree) * sp.kbar_max;
    for (const auto& mu : enumerate_partitions(mu_bound)) {
        TP smu = schur_poly(cx, sp, mu, false, Rat(1));
        if (smu.is_zero()) continue;
        for (const auto& mubar : enumerate_partitions(mubar_bound)) {
            TP smubar = schur_poly(cx, sp, mubar, true, Rat(-1));
            if (smubar.is_zero()) continue;
            QPoly inner = cx.zero();
            for (const auto& nu : enumerate_partitions(max_size)) {
                USeries left = gg_element(mu, nu, cx.u_cutoff);
                if (left.is_zero()) continue;
                USeries right = gg_prime_element(nu, mubar, cx.u_cutoff);
                if (right.is_zero()) continue;
                inner += QPoly::q_monomial(l0_value(nu, s),
                                           (left * right).truncated(cx.u_cutoff),
                                           cx.q_cutoff);
            }
            if (inner.is_zero()) continue;
            QPoly weight = inner * cx.u_pow(w0_value(mu, s) - w0_value(mubar, s));
            acc += smu * smubar * TP::constant(weight, sp.nvars(), sp.degree);
        }
    }
    return acc;
}

// ---- the two theorem verifiers ----

namespace detail {

inline TPoly<QPoly> monomial_tp(const TMono& k, int nvars, int deg) {
    TPoly<QPoly> m = TPoly<QPoly>::constant(QPoly::one(), nvars, deg);
    for (size_t v = 0; v < k.e.size(); ++v)
        for (int rep = 0; rep < k.e[v]; ++rep)
            m *= TPoly<QPoly>::variable(static_cast<int>(v), QPoly::one(), nvars, deg);
    return m;
}

// truncate every QPoly coefficient of a TPoly to the given Q-degree cutoff
inline TPoly<QPoly> truncate_qdeg(const TPoly<QPoly>& p, QPoly::exp_t qcut) {
    TPoly<QPoly> r(p.nvars(), p.max_degree());
    for (const auto& [k, v] : p.terms()) {
        QPoly t = v.truncated(qcut, v.u_cutoff());
        if (!t.is_zero())
            r += TPoly<QPoly>::constant(t, p.nvars(), p.max_degree()) *
                 monomial_tp(k, p.nvars(), p.max_degree());
    }
    return r;
}

} // namespace detail

// Z(s,t) = exp(sum t_k q^k/(1-q^k)) q^{-s(s+1)(2s+1)/6} tau(s, iota(t)),
// iota(t) = ((-1)^k t_k). Both sides are complete through Q-degree
// max_size + s(s+1)/2 and are compared there, per t-monomial.
CheckResult verify_theorem1(const QSeriesScalars& cx, const DeformSpec& sp, long s,
                            long max_size);

// Z'(s,t,tbar) = exp(sum (q^k t_k - tbar_k)/(1-q^k)) tau'(s, iota(t), -tbar).
CheckResult verify_theorem2(const QSeriesScalars& cx, const DeformSpec& sp, long s,
                            long max_size);

namespace detail {

inline TPoly<QPoly> scale_blocks(const TPoly<QPoly>& p, const DeformSpec& sp,
                                 bool alt_t, bool neg_tbar) {
    std::vector<Rat> sigma(static_cast<size_t>(sp.nvars()), Rat(1));
    if (alt_t)
        for (int k = 1; k <= sp.kmax; ++k)
            sigma[static_cast<size_t>(sp.t_var(k))] = (k % 2 == 0) ? Rat(1) : Rat(-1);
    if (neg_tbar)
        for (int k = 1; k <= sp.kbar_max; ++k)
            sigma[static_cast<size_t>(sp.tbar_var(k))] = Rat(-1);
    return p.scale_vars(sigma);
}

inline std::string residual_report(const TPoly<QPoly>& diff) {
    std::string out;
    for (const auto& [k, v] : diff.terms()) {
        out += "monomial(";
        for (size_t i = 0; i < k.e.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(k.e[i]);
        }
        out += "): " + v.to_string() + "; ";
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

inline CheckResult verify_theorem1(const QSeriesScalars& cx, const DeformSpec& sp, long s,
                                   long max_size) {
    CheckResult res;
    res.id = "theorem1";
    res.params["s"] = std::to_string(s);
    res.params["N"] = std::to_string(max_size);
    res.params["t_degree"] = std::to_string(sp.degree);
    res.params["kmax"] = std::to_string(sp.kmax);
    res.params["u_cutoff"] = std::to_string(cx.u_cutoff);

    using TP = TPoly<QPoly>;
    TP lhs = z_deformed(cx, sp, false, s, max_size);

    TP pre(sp.nvars(), sp.degree);
    for (int k = 1; k <= sp.kmax; ++k) {
        QPoly coeff(
            (series_inv(USeries::one() - USeries::monomial(2 * k), cx.u_cutoff) *
             USeries::monomial(2 * k))
                .truncated(cx.u_cutoff));
        pre += TP::variable(sp.t_var(k), coeff, sp.nvars(), sp.degree);
    }
    TP rhs = tpoly_exp(pre, cx.one());
    TP tau = detail::scale_blocks(tau_1d(cx, sp, s, max_size), sp, true, false);
    rhs *= tau;
    const long w6 = s * (s + 1) * (2 * s + 1) / 6; // prefactor q^{-w6}
    rhs *= TP::constant(QPoly(USeries::monomial(-2 * w6)), sp.nvars(), sp.degree);

    const QPoly::exp_t qcap = max_size + s * (s + 1) / 2 + 1;
    TP diff = detail::truncate_qdeg(lhs - rhs, std::min<QPoly::exp_t>(qcap, cx.q_cutoff));
    res.require(diff.is_zero(), detail::residual_report(diff));
    return res;
}

inline CheckResult verify_theorem2(const QSeriesScalars& cx, const DeformSpec& sp, long s,
                                   long max_size) {
    CheckResult res;
    res.id = "theorem2";
    res.params["s"] = std::to_string(s);
    res.params["N"] = std::to_string(max_size);
    res.params["t_degree"] = std::to_string(sp.degree);
    res.params["kmax"] = std::to_string(sp.kmax);
    res.params["kbar_max"] = std::to_string(sp.kbar_max);
    res.params["u_cutoff"] = std::to_string(cx.u_cutoff);

    using TP = TPoly<QPoly>;
    TP lhs = z_deformed(cx, sp, true, s, max_size);

    TP pre(sp.nvars(), sp.degree);
    for (int k = 1; k <= sp.kmax; ++k) {
        QPoly coeff(
            (series_inv(USeries::one() - USeries::monomial(2 * k), cx.u_cutoff) *
             USeries::monomial(2 * k))
                .truncated(cx.u_cutoff));
        pre += TP::variable(sp.t_var(k), coeff, sp.nvars(), sp.degree);
    }
    for (int k = 1; k <= sp.kbar_max; ++k) {
        QPoly coeff(
            (series_inv(USeries::one() - USeries::monomial(2 * k), cx.u_cutoff) * Rat(-1))
                .truncated(cx.u_cutoff));
        pre += TP::variable(sp.tbar_var(k), coeff, sp.nvars(), sp.degree);
    }
    TP rhs = tpoly_exp(pre, cx.one());
    TP tau = detail::scale_blocks(tau_2d(cx, sp, s, max_size), sp, true, true);
    rhs *= tau;

    const QPoly::exp_t qcap = max_size + s * (s + 1) / 2 + 1;
    TP diff = detail::truncate_qdeg(lhs - rhs, std::min<QPoly::exp_t>(qcap, cx.q_cutoff));
    res.require(diff.is_zero(), detail::residual_report(diff));
    return res;
}

} // namespace crystal
