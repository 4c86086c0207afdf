#pragma once

#include <functional>
#include <vector>

#include "crystal/check_result.hpp"
#include "crystal/window_matrix.hpp"

namespace crystal {

// Principal specializations of the complete homogeneous / elementary
// symmetric functions at (q^{1/2}, q^{3/2}, ...), in any scalar mode:
//   h_a = q^{a/2}   / prod_{j=1}^{a} (1 - q^j)
//   e_a = q^{a^2/2} / prod_{j=1}^{a} (1 - q^j)
template <class Cx>
typename Cx::scalar h_coeff(const Cx& cx, long a) {
    if (a < 0) return cx.zero();
    if (a == 0) return cx.one();
    auto den = cx.one();
    for (long j = 1; j <= a; ++j) den *= cx.one() - cx.q_pow(j);
    return cx.truncate(cx.u_pow(a) * scalar_inv(cx, den));
}

template <class Cx>
typename Cx::scalar e_coeff(const Cx& cx, long a) {
    if (a < 0) return cx.zero();
    if (a == 0) return cx.one();
    auto den = cx.one();
    for (long j = 1; j <= a; ++j) den *= cx.one() - cx.q_pow(j);
    return cx.truncate(cx.u_pow(a * a) * scalar_inv(cx, den));
}

enum class VertexKind { GammaPlus, GammaMinus, GammaPrimePlus, GammaPrimeMinus };

// Window of a vertex-operator matrix with closed-form Toeplitz entries.
//   Gamma_{+-}(z)  = (1 - z Lambda^{+-1})^{-1}: coefficients z^a
//   Gamma'_{+-}(z) = 1 + z Lambda^{+-1}       : band 1
// At the principal argument z = q^{-rho} (with an optional extra scale zeta):
//   Gamma  -> coefficients zeta^a h_a, inverse -> (-zeta)^a e_a
//   Gamma' -> coefficients zeta^a e_a, inverse -> (-zeta)^a h_a
// In symbolic mode the band stops where the coefficients vanish modulo the
// cutoffs; in numeric mode it is capped at the window width.
template <class Cx>
WindowMatrix<typename Cx::scalar> make_vertex_principal(
    const Cx& cx, long lo, long hi, VertexKind kind, bool inverse,
    std::function<typename Cx::scalar(long)> zeta_pow = nullptr) {
    using S = typename Cx::scalar;
    const bool upper = kind == VertexKind::GammaPlus || kind == VertexKind::GammaPrimePlus;
    const bool primed =
        kind == VertexKind::GammaPrimePlus || kind == VertexKind::GammaPrimeMinus;
    const bool elementary = (primed != inverse); // e-type entries, else h-type

    std::vector<S> coeffs{cx.one()};
    for (long a = 1; a <= hi - lo; ++a) {
        S c = elementary ? e_coeff(cx, a) : h_coeff(cx, a);
        if (zeta_pow) c = c * zeta_pow(a);
        if (inverse && a % 2 == 1) c = c * Rat(-1);
        c = cx.truncate(c);
        if (Cx::symbolic && c.is_zero()) break;
        coeffs.push_back(c);
    }
    const long bandw = static_cast<long>(coeffs.size()) - 1;
    BandProfile band = upper ? BandProfile{0, bandw} : BandProfile{bandw, 0};
    return WindowMatrix<S>::from_band(lo, hi, band, [&](long, long d) {
        long a = upper ? d : -d;
        return coeffs[static_cast<size_t>(a)];
    });
}

// Single-argument vertex matrices.
template <class Cx>
WindowMatrix<typename Cx::scalar> make_vertex_single(const Cx& cx, long lo, long hi,
                                                     VertexKind kind, bool inverse,
                                                     const typename Cx::scalar& z) {
    using S = typename Cx::scalar;
    const bool upper = kind == VertexKind::GammaPlus || kind == VertexKind::GammaPrimePlus;
    const bool primed =
        kind == VertexKind::GammaPrimePlus || kind == VertexKind::GammaPrimeMinus;
    const bool banded = (primed != inverse); // 1 +- z Lambda^{+-1}
    std::vector<S> coeffs{cx.one()};
    if (banded) {
        S c = z;
        if (inverse) c = c * Rat(-1); // Gamma(z)^{-1} = 1 - z Lambda
        coeffs.push_back(cx.truncate(c));
    } else {
        S zp = cx.one();
        for (long a = 1; a <= hi - lo; ++a) {
            zp = cx.truncate(zp * z);
            if (inverse) {
                // Gamma'(z)^{-1} = sum (-z)^a Lambda^{a}
                S c = (a % 2 == 1) ? zp * Rat(-1) : zp;
                if (Cx::symbolic && c.is_zero()) break;
                coeffs.push_back(c);
            } else {
                if (Cx::symbolic && zp.is_zero()) break;
                coeffs.push_back(zp);
            }
        }
    }
    const long bandw = static_cast<long>(coeffs.size()) - 1;
    BandProfile band = upper ? BandProfile{0, bandw} : BandProfile{bandw, 0};
    return WindowMatrix<S>::from_band(lo, hi, band, [&](long, long d) {
        long a = upper ? d : -d;
        return coeffs[static_cast<size_t>(a)];
    });
}

// Matrix window of g (1D string) or g' (the factorization seed):
//   g  = q^{D^2/2} G- G+ Q^D G-  G+  q^{D^2/2}
//   g' = q^{D^2/2} G- G+ Q^D G'- G'+ q^{-D^2/2}
template <class Cx>
WindowMatrix<typename Cx::scalar> matrix_of_g(const Cx& cx, long lo, long hi,
                                              bool primed) {
    auto gm = make_vertex_principal(cx, lo, hi, VertexKind::GammaMinus, false);
    auto gp = make_vertex_principal(cx, lo, hi, VertexKind::GammaPlus, false);
    auto inner_m = primed
                       ? make_vertex_principal(cx, lo, hi, VertexKind::GammaPrimeMinus, false)
                       : gm;
    auto inner_p = primed
                       ? make_vertex_principal(cx, lo, hi, VertexKind::GammaPrimePlus, false)
                       : gp;
    auto qd2 = make_basic(cx, lo, hi, BasicKind::QDeltaSq, 1, +1);
    auto qd2i = make_basic(cx, lo, hi, BasicKind::QDeltaSq, 1, primed ? -1 : +1);
    auto Qd = make_basic(cx, lo, hi, BasicKind::CapQDelta);
    auto mid = compose(compose(gm, gp), compose(Qd, compose(inner_m, inner_p)));
    return compose(qd2, compose(mid, qd2i));
}

// Matrix-level shift symmetry (no central constants at this level):
//   G+ q^{kD} G+^{-1} = (-1)^k G-^{-1} [q^{-D^2/2} L^k q^{D^2/2}] G-
// and the primed partner with k -> -k. Both sides are composed independently
// from closed-form windows and compared on the joint trusted core.
template <class Cx>
CheckResult verify_matrix_shift_symmetry(const Cx& cx, long k, bool primed, long lo,
                                         long hi, bool negative_control = false) {
    using S = typename Cx::scalar;
    CheckResult res;
    res.id = primed ? "matrix-shift-symmetry-primed" : "matrix-shift-symmetry";
    res.params["k"] = std::to_string(k);
    res.params["window"] = std::to_string(lo) + ".." + std::to_string(hi);

    WindowMatrix<S> lhs, rhs;
    if (!primed) {
        auto gp = make_vertex_principal(cx, lo, hi, VertexKind::GammaPlus, false);
        auto gpi = make_vertex_principal(cx, lo, hi, VertexKind::GammaPlus, true);
        auto diag = make_basic(cx, lo, hi, BasicKind::QDelta, k);
        lhs = compose(gp, compose(diag, gpi));
        auto gm = make_vertex_principal(cx, lo, hi, VertexKind::GammaMinus, false);
        auto gmi = make_vertex_principal(cx, lo, hi, VertexKind::GammaMinus, true);
        // q^{-D^2/2} Lambda^k q^{D^2/2}: entries u^{2kn + k^2} at (n, n+k)
        WindowMatrix<S> mid(lo, hi);
        for (long n = lo; n <= hi - k; ++n) mid.at(n, n + k) = cx.u_pow(2 * k * n + k * k);
        mid.set_band({-k, k});
        if (negative_control) {
            rhs = mid; // leave out the dressing factors entirely
        } else {
            rhs = compose(gmi, compose(mid, gm));
        }
        if (k % 2 != 0) {
            WindowMatrix<S> neg(lo, hi);
            for (long i = lo; i <= hi; ++i)
                for (long j = lo; j <= hi; ++j) neg.at(i, j) = -rhs.at(i, j);
            neg.set_band(rhs.band());
            neg.set_guards(rhs.guard_lo(), rhs.guard_hi());
            rhs = neg;
        }
    } else {
        auto gm = make_vertex_principal(cx, lo, hi, VertexKind::GammaPrimeMinus, false);
        auto gmi = make_vertex_principal(cx, lo, hi, VertexKind::GammaPrimeMinus, true);
        auto diag = make_basic(cx, lo, hi, BasicKind::QDelta, -k);
        lhs = compose(gmi, compose(diag, gm));
        auto gp = make_vertex_principal(cx, lo, hi, VertexKind::GammaPrimePlus, false);
        auto gpi = make_vertex_principal(cx, lo, hi, VertexKind::GammaPrimePlus, true);
        // q^{-D^2/2} Lambda^{-k} q^{D^2/2}: entries u^{-2kn + k^2} at (n, n-k)
        WindowMatrix<S> mid(lo, hi);
        for (long n = lo + k; n <= hi; ++n) mid.at(n, n - k) = cx.u_pow(-2 * k * n + k * k);
        mid.set_band({k, -k});
        if (negative_control) {
            rhs = mid;
        } else {
            rhs = compose(gp, compose(mid, gpi));
        }
    }

    auto diff = lhs - rhs;
    res.params["core"] =
        std::to_string(diff.core_lo()) + ".." + std::to_string(diff.core_hi());
    std::string where;
    if (!zero_on_core(diff, &where)) res.fail(where);
    return res;
}

// Lambda^k G = G Lambda^{-k} on the trusted core of g's matrix.
template <class Cx>
CheckResult verify_matrix_1d_symmetry(const Cx& cx, long k, long lo, long hi) {
    using S = typename Cx::scalar;
    CheckResult res;
    res.id = "matrix-commute-through-g";
    res.params["k"] = std::to_string(k);
    auto G = matrix_of_g(cx, lo, hi, false);
    auto up = make_basic(cx, lo, hi, BasicKind::Shift, k);
    auto down = make_basic(cx, lo, hi, BasicKind::Shift, -k);
    auto diff = compose(up, G) - compose(G, down);
    res.params["core"] =
        std::to_string(diff.core_lo()) + ".." + std::to_string(diff.core_hi());
    std::string where;
    if (!zero_on_core(diff, &where)) res.fail(where);
    return res;
}

} // namespace crystal
