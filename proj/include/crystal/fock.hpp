#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crystal/check_result.hpp"
#include "crystal/errors.hpp"
#include "crystal/partition.hpp"
#include "crystal/scalars.hpp"

namespace crystal {

// Brute-force model of the charged free-fermion Fock space on a finite level
// window. Level n carries the mode pair (psi_{-n}, psi*_n); levels below the
// window are implicitly filled, levels above are implicitly empty. This module
// is the oracle side of every operator identity: it knows nothing about
// closed-form Schur specializations or Toeplitz matrices.

struct ModeWindow {
    long lo;
    long hi;
    long width() const { return hi - lo + 1; }
};

class FockState {
  public:
    FockState() : w_{0, 0} {}
    FockState(ModeWindow w, std::vector<long> occupied_desc)
        : w_(w), occ_(std::move(occupied_desc)) {
        for (size_t i = 0; i < occ_.size(); ++i) {
            if (occ_[i] < w_.lo || occ_[i] > w_.hi)
                throw window_overflow("occupied level outside window");
            if (i > 0 && occ_[i] >= occ_[i - 1])
                throw domain_error("levels must be strictly descending");
        }
    }

    // |lambda, s>: occupied levels lambda_i + s - i + 1. Representable iff the
    // top level fits under hi and everything below lo is saturated.
    static FockState from_partition(const Partition& lambda, long s, ModeWindow w) {
        if (lambda.part(0) + s > w.hi)
            throw window_overflow("top level above window");
        if (s - static_cast<long>(lambda.length()) < w.lo - 1)
            throw window_overflow("state not saturated below window");
        std::vector<long> occ;
        for (long i = 1;; ++i) {
            long level = lambda.part(i - 1) + s - i + 1;
            if (level < w.lo) break;
            occ.push_back(level);
        }
        return FockState(w, std::move(occ));
    }

    const ModeWindow& window() const { return w_; }
    const std::vector<long>& occupied() const { return occ_; }

    bool is_occupied(long n) const {
        if (n < w_.lo) return true;
        if (n > w_.hi) return false;
        return std::binary_search(occ_.rbegin(), occ_.rend(), n);
    }

    long charge() const {
        long pos = 0, occ_nonpos = 0;
        for (long n : occ_) {
            if (n > 0) ++pos;
            else ++occ_nonpos;
        }
        long nonpos_levels = std::min(0L, w_.hi) - w_.lo + 1; // levels in [lo, 0]
        return pos - (nonpos_levels - occ_nonpos);
    }

    Partition partition() const {
        long s = charge();
        std::vector<long> parts;
        for (size_t i = 0; i < occ_.size(); ++i) {
            long lam = occ_[i] - s + static_cast<long>(i);
            if (lam == 0) break;
            parts.push_back(lam);
        }
        return Partition(std::move(parts));
    }

    // psi_{-n}: create level n. nullopt when the result vanishes.
    std::optional<std::pair<FockState, int>> create(long n) const {
        if (n < w_.lo) return std::nullopt; // already filled below the window
        if (n > w_.hi) throw window_overflow("create above window");
        auto pos = std::lower_bound(occ_.begin(), occ_.end(), n, std::greater<long>());
        if (pos != occ_.end() && *pos == n) return std::nullopt;
        int sign = (std::distance(occ_.begin(), pos) % 2 == 0) ? 1 : -1;
        std::vector<long> next(occ_.begin(), pos);
        next.push_back(n);
        next.insert(next.end(), pos, occ_.end());
        return std::make_pair(FockState(w_, std::move(next)), sign);
    }

    // psi*_n: annihilate level n. nullopt when the result vanishes.
    std::optional<std::pair<FockState, int>> annihilate(long n) const {
        if (n < w_.lo)
            throw window_overflow("annihilation below window would leave a hole");
        if (n > w_.hi) return std::nullopt;
        auto pos = std::lower_bound(occ_.begin(), occ_.end(), n, std::greater<long>());
        if (pos == occ_.end() || *pos != n) return std::nullopt;
        int sign = (std::distance(occ_.begin(), pos) % 2 == 0) ? 1 : -1;
        std::vector<long> next(occ_.begin(), pos);
        next.insert(next.end(), pos + 1, occ_.end());
        return std::make_pair(FockState(w_, std::move(next)), sign);
    }

    friend bool operator<(const FockState& a, const FockState& b) { return a.occ_ < b.occ_; }
    friend bool operator==(const FockState& a, const FockState& b) { return a.occ_ == b.occ_; }

    std::string to_string() const {
        std::string s = "{";
        for (size_t i = 0; i < occ_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(occ_[i]);
        }
        return s + "}";
    }

  private:
    ModeWindow w_;
    std::vector<long> occ_; // strictly descending levels in [lo, hi]
};

template <class S>
using FockVector = std::map<FockState, S>;

inline bool exactly_zero(const Rat& r) { return r.is_zero(); }
inline bool exactly_zero(const USeries& s) { return s.is_zero() && s.is_exact(); }
inline bool exactly_zero(const QPoly& p) {
    return p.is_zero() && p.q_cutoff() >= QPoly::kInf && p.u_cutoff() >= USeries::kInf;
}

// Zero coefficients that still carry a finite cutoff are kept: "0 + O(u^c)"
// is information, not absence.
template <class S>
void fv_add(FockVector<S>& v, const FockState& st, const S& c) {
    if (exactly_zero(c)) return;
    auto [it, fresh] = v.emplace(st, c);
    if (!fresh) {
        it->second += c;
        if (exactly_zero(it->second)) v.erase(it);
    }
}

template <class S>
FockVector<S> fv_sub(const FockVector<S>& a, const FockVector<S>& b) {
    FockVector<S> r = a;
    for (const auto& [st, c] : b) fv_add(r, st, -c);
    return r;
}

template <class S, class Cx>
FockVector<S> fv_truncate(const Cx& cx, const FockVector<S>& v) {
    FockVector<S> r;
    for (const auto& [st, c] : v) {
        S t = cx.truncate(c);
        if (!t.is_zero()) r.emplace(st, t);
    }
    return r;
}

template <class S>
bool fv_is_zero(const FockVector<S>& v) { return v.empty(); }

// ---- diagonal eigenvalues (exact window-internal normal ordering against
//      the charge-0 vacuum) ----

inline long l0_eigenvalue(const FockState& st) {
    long acc = 0;
    for (long n : st.occupied()) acc += n;
    for (long n = st.window().lo; n <= std::min(0L, st.window().hi); ++n) acc -= n;
    return acc;
}

inline long w0_eigenvalue(const FockState& st) {
    long acc = 0;
    for (long n : st.occupied()) acc += n * n;
    for (long n = st.window().lo; n <= std::min(0L, st.window().hi); ++n) acc -= n * n;
    return acc;
}

template <class Cx>
typename Cx::scalar hk_eigenvalue(const Cx& cx, const FockState& st, long k) {
    auto acc = cx.zero();
    for (long n : st.occupied()) acc += cx.q_pow(k * n);
    for (long n = st.window().lo; n <= std::min(0L, st.window().hi); ++n)
        acc -= cx.q_pow(k * n);
    return acc;
}

// ---- bilinears ----

inline long state_size(const FockState& st) {
    long s = st.charge();
    return l0_eigenvalue(st) - s * (s + 1) / 2;
}

inline USeries trunc_at(const USeries& s, long e) { return s.truncated(e); }
inline QPoly trunc_at(const QPoly& p, long e) { return p.truncated(p.q_cutoff(), e); }
inline long u_ord_of(const USeries& s) { return s.ord_or_cutoff(); }
inline long u_cut_of(const USeries& s) { return s.cutoff(); }
inline long u_ord_of(const QPoly& p) { return p.uord_or_cutoff(); }
inline long u_cut_of(const QPoly& p) { return p.u_cutoff(); }

struct FockOpts {
    bool w0_sandwich = false; // apply q^{-W0/2} J_k q^{W0/2} instead of J_k
    long size_cap = -1;       // drop states with |partition| > cap (raising chains)
    bool prune = true;        // truncate coefficients at the context cutoff
};

// J_k = sum_n :psi_{-n} psi*_{n+k}: (k != 0): move one particle down by k.
// With w0_sandwich, the move m -> m-k picks up the exact monomial
// u^{m^2 - (m-k)^2}, avoiding the huge transient orders of a separate
// q^{W0/2} factor. A size cap makes raising chains finite; it is exact for
// outputs within the cap as long as no later factor lowers sizes again.
template <class Cx>
FockVector<typename Cx::scalar> apply_J(const Cx& cx, long k,
                                        const FockVector<typename Cx::scalar>& v,
                                        FockOpts opts = {}) {
    using S = typename Cx::scalar;
    if (k == 0) throw domain_error("J_0 is the charge; use L0/H0 conventions explicitly");
    FockVector<S> out;
    for (const auto& [st, c] : v) {
        const ModeWindow& w = st.window();
        // explicit sources
        const long moved_size = state_size(st) - k;
        for (long m : st.occupied()) {
            long n = m - k;
            if (n < w.lo) continue; // target in the filled region: term vanishes
            if (opts.size_cap >= 0 && moved_size > opts.size_cap) continue;
            auto killed = st.annihilate(m);
            if (!killed) continue;
            auto made = killed->first.create(n);
            if (!made) continue;
            S coeff = c * cx.from_rat(Rat(killed->second * made->second));
            if (opts.w0_sandwich) coeff = coeff * cx.u_pow(m * m - n * n);
            fv_add(out, made->first, coeff);
        }
        // implicit sources below the window (k < 0 raises them into view)
        if (k < 0 && !(opts.size_cap >= 0 && moved_size > opts.size_cap)) {
            for (long m = w.lo + k; m < w.lo; ++m) {
                long n = m - k; // in [lo, lo - k)
                if (n > w.hi) throw window_overflow("raise above window");
                if (!st.is_occupied(n))
                    throw window_overflow("state too close to the lower window edge");
                // target occupied: term vanishes
            }
        }
    }
    return out;
}

enum class Bilinear { L0, W0, H };

template <class Cx>
FockVector<typename Cx::scalar> apply_diagonal(const Cx& cx, Bilinear op, long k,
                                               const FockVector<typename Cx::scalar>& v) {
    using S = typename Cx::scalar;
    FockVector<S> out;
    for (const auto& [st, c] : v) {
        S eig = cx.zero();
        switch (op) {
            case Bilinear::L0: eig = cx.from_rat(Rat(l0_eigenvalue(st))); break;
            case Bilinear::W0: eig = cx.from_rat(Rat(w0_eigenvalue(st))); break;
            case Bilinear::H: eig = hk_eigenvalue(cx, st, k); break;
        }
        fv_add(out, st, c * eig);
    }
    return out;
}

// Custom normal-ordered bilinear sum x_{nm} :psi_{-n} psi*_m: given by a
// sparse list of (n, m, coefficient) triples with n, m inside the window.
template <class Cx>
FockVector<typename Cx::scalar> apply_custom_bilinear(
    const Cx& cx,
    const std::vector<std::tuple<long, long, typename Cx::scalar>>& entries,
    const FockVector<typename Cx::scalar>& v) {
    using S = typename Cx::scalar;
    FockVector<S> out;
    for (const auto& [st, c] : v) {
        for (const auto& [n, m, x] : entries) {
            auto killed = st.annihilate(m);
            if (!killed) continue;
            auto made = killed->first.create(n);
            if (!made) continue;
            fv_add(out, made->first,
                   c * x * cx.from_rat(Rat(killed->second * made->second)));
        }
        // normal ordering subtracts the charge-0 vacuum expectation
        for (const auto& [n, m, x] : entries)
            if (n == m && n <= 0) fv_add(out, st, -(c * x));
    }
    return out;
}

// ---- vertex operators ----

enum class Vertex { GammaPlus, GammaMinus, GammaPrimePlus, GammaPrimeMinus };

// exp(sum_k c_k J_{sigma k}) applied as a truncated exponential series; the
// coefficients must have positive u-order so the series terminates.
template <class Cx>
FockVector<typename Cx::scalar> apply_current_exp(
    const Cx& cx, int sigma, const std::vector<typename Cx::scalar>& ck,
    const FockVector<typename Cx::scalar>& v, FockOpts opts = {}) {
    static_assert(Cx::symbolic, "vertex exponentials need a truncating scalar context");
    using S = typename Cx::scalar;
    if (!opts.prune && sigma < 0 && opts.size_cap < 0)
        throw domain_error("unpruned raising exponential needs a size cap");
    auto shrink = [&](const S& c) { return opts.prune ? cx.truncate(c) : c; };
    FockVector<S> acc;
    for (const auto& [st, c] : v) {
        S t = shrink(c);
        if (!t.is_zero()) acc.emplace(st, t);
    }
    FockVector<S> term = acc;
    for (long m = 1;; ++m) {
        FockVector<S> next;
        for (size_t k = 1; k <= ck.size(); ++k) {
            if (ck[k - 1].is_zero()) continue;
            // scale first so that terms already beyond the cutoff can never
            // push a particle out of the window
            FockVector<S> scaled;
            for (const auto& [st, c] : term) {
                S sc = shrink(c * ck[k - 1]);
                if (!sc.is_zero()) scaled.emplace(st, sc);
            }
            if (scaled.empty()) continue;
            FockVector<S> jt =
                apply_J(cx, sigma * static_cast<long>(k), scaled, opts);
            for (const auto& [st, c] : jt) fv_add(next, st, c);
        }
        for (auto& [st, c] : next) c = shrink(c * Rat(1, m));
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        if (next.empty()) break;
        term = std::move(next);
        for (const auto& [st, c] : term) fv_add(acc, st, c);
    }
    return acc;
}

// Coefficients of the four vertex kinds at argument z:
//   Gamma_{+-}(z)  = exp( sum z^k / k J_{+-k} )
//   Gamma'_{+-}(z) = exp( -sum (-z)^k / k J_{+-k} )
// inverse = true negates the exponent.
template <class Cx>
FockVector<typename Cx::scalar> apply_vertex(const Cx& cx, Vertex kind, bool inverse,
                                             const typename Cx::scalar& z,
                                             const FockVector<typename Cx::scalar>& v,
                                             FockOpts opts = {}) {
    using S = typename Cx::scalar;
    const bool primed = kind == Vertex::GammaPrimePlus || kind == Vertex::GammaPrimeMinus;
    const int sigma =
        (kind == Vertex::GammaPlus || kind == Vertex::GammaPrimePlus) ? +1 : -1;
    std::vector<S> ck;
    S zp = cx.one();
    if (!opts.prune && opts.size_cap < 0)
        throw domain_error("unpruned vertex application needs a size cap");
    const long kmax = opts.prune ? cx.u_cutoff : opts.size_cap;
    for (long k = 1; k <= kmax; ++k) {
        zp = opts.prune ? cx.truncate(zp * z) : zp * z;
        if (zp.is_zero()) break;
        Rat r(1, k);
        if (primed && k % 2 == 0) r = -r; // -(-z)^k/k = (-1)^{k+1} z^k / k
        if (inverse) r = -r;
        ck.push_back(zp * r);
    }
    return apply_current_exp(cx, sigma, ck, v, opts);
}

// Product over z = q^{1/2}, q^{3/2}, ..., truncated to factor_count factors;
// in pruning mode, factors beyond the u-cutoff act as the identity.
// Dropping the factors i > P leaves a relative error of order 2P+1 that moves
// particles like the kept ones do, so each output coefficient is trusted only
// 2P+1 orders above the cheapest upstream coefficient; the final pass records
// that in the coefficient cutoffs.
template <class Cx>
FockVector<typename Cx::scalar> apply_vertex_principal(
    const Cx& cx, Vertex kind, bool inverse, long factor_count,
    const FockVector<typename Cx::scalar>& v, FockOpts opts = {}) {
    using S = typename Cx::scalar;
    FockVector<S> cur = v;
    long applied = 0;
    for (long i = 1; i <= factor_count; ++i) {
        if (opts.prune && 2 * i - 1 >= cx.u_cutoff) break;
        cur = apply_vertex(cx, kind, inverse, cx.u_pow(2 * i - 1), cur, opts);
        applied = i;
    }
    const bool raising = kind == Vertex::GammaMinus || kind == Vertex::GammaPrimeMinus;
    const long rel = 2 * applied + 1;
    // running minimum of coefficient orders over strictly upstream sizes
    std::map<long, long> min_ord_by_size;
    for (const auto& [st, c] : cur) {
        long sz = state_size(st);
        long o = static_cast<long>(u_ord_of(c));
        auto [it, fresh] = min_ord_by_size.emplace(sz, o);
        if (!fresh) it->second = std::min(it->second, o);
    }
    if (min_ord_by_size.empty()) return cur;
    std::map<long, long> upstream; // size -> min ord at sizes strictly before
    {
        long run = USeries::kInf;
        if (raising) {
            for (auto it = min_ord_by_size.begin(); it != min_ord_by_size.end(); ++it) {
                upstream[it->first] = run;
                run = std::min(run, it->second);
            }
        } else {
            for (auto it = min_ord_by_size.rbegin(); it != min_ord_by_size.rend(); ++it) {
                upstream[it->first] = run;
                run = std::min(run, it->second);
            }
        }
    }
    FockVector<S> out;
    for (const auto& [st, c] : cur) {
        long up = upstream[state_size(st)];
        long trust = (up >= USeries::kInf) ? USeries::kInf
                                           : up + rel; // error needs >= 1 move
        S t = trunc_at(c, trust);
        if (!exactly_zero(t)) out.emplace(st, t);
    }
    return out;
}

// g  = q^{W0/2} G- G+ Q^{L0} G-  G+  q^{W0/2}
// g' = q^{W0/2} G- G+ Q^{L0} G'- G'+ q^{-W0/2}
// applied right to left to a single basis state, with every vertex product
// capped at partition size C and no coefficient pruning. The result is exact
// along all paths whose intermediates stay within the cap; paths that escape
// must climb above C and descend again, so the entry at `out` is trusted
// modulo u^{2(C+1) - |in| - |out| + w0-shifts}, which apply_g_exact records
// as the coefficient cutoff.
template <class Cx>
FockVector<typename Cx::scalar> apply_g_exact(const Cx& cx, bool primed, long P,
                                              const FockState& input, long size_cap) {
    using S = typename Cx::scalar;
    static_assert(Cx::symbolic, "g-string application needs a truncating context");
    // the middle factors only raise u-orders, so absolute pruning at the
    // trust ceiling 2(C+1) is sound and keeps coefficients small
    Cx mid_cx = cx;
    mid_cx.u_cutoff = 2 * (size_cap + 1);
    FockOpts opts;
    opts.size_cap = size_cap;
    const long in_size = state_size(input);
    const long in_w0 = w0_eigenvalue(input);

    FockVector<S> cur;
    fv_add(cur, input, mid_cx.one());
    cur = apply_vertex_principal(mid_cx, primed ? Vertex::GammaPrimePlus : Vertex::GammaPlus,
                                 false, P, cur, opts);
    cur = apply_vertex_principal(mid_cx,
                                 primed ? Vertex::GammaPrimeMinus : Vertex::GammaMinus,
                                 false, P, cur, opts);
    { // Q^{L0}
        FockVector<S> out;
        for (const auto& [st, c] : cur) fv_add(out, st, c * mid_cx.Q_pow(l0_eigenvalue(st)));
        cur = std::move(out);
    }
    cur = apply_vertex_principal(mid_cx, Vertex::GammaPlus, false, P, cur, opts);
    cur = apply_vertex_principal(mid_cx, Vertex::GammaMinus, false, P, cur, opts);

    FockVector<S> out;
    for (const auto& [st, c] : cur) {
        long w0s = w0_eigenvalue(st);
        long wshift = (primed ? -in_w0 : in_w0) + w0s;
        long trust = 2 * (size_cap + 1) - in_size - state_size(st) + wshift;
        S val = trunc_at(c * cx.u_pow(wshift), trust);
        out.emplace(st, val); // keep empty values: they still carry the cutoff
    }
    return out;
}

// Zero value carrying the same trust cutoff an apply_g_exact entry would have.
template <class Cx>
typename Cx::scalar g_exact_zero(const Cx& cx, bool primed, const FockState& input,
                                 const FockState& out, long size_cap) {
    long wshift = (primed ? -w0_eigenvalue(input) : w0_eigenvalue(input)) +
                  w0_eigenvalue(out);
    long trust = 2 * (size_cap + 1) - state_size(input) - state_size(out) + wshift;
    return trunc_at(cx.zero(), trust);
}

// ---- verification reports ----

// Anticommutation relations as operator identities on the full truncated
// space: psi_m psi*_n + psi*_n psi_m = delta_{m+n,0}, and both doubly
// fermionic relations. Levels are swept over the window interior.
CheckResult verify_anticommutators(ModeWindow w);

// Shift symmetry with central terms, on chosen states, symbolic in q:
//  k > 0:  G+ H_k G+^{-1} = (-1)^k G-^{-1} q^{-W0/2} J_k q^{W0/2} G- + q^k/(1-q^k)
//  primed: G'-^{-1} H_{-k} G'- = G'+ q^{-W0/2} J_{-k} q^{W0/2} G'+^{-1} - 1/(1-q^k)
// Verified in the equivalent inverse-free arrangement (multiply through by the
// vertex products), which keeps every chain monotone in partition size so a
// size cap is exact:
//  k > 0:  G- G+ H_k = (-1)^k q^{-W0/2} J_k q^{W0/2} G- G+ + q^k/(1-q^k) G- G+
//  primed: H_{-k} G'- G'+ = G'- G'+ q^{-W0/2} J_{-k} q^{W0/2} - 1/(1-q^k) G'- G'+
CheckResult verify_shift_symmetries(const SeriesScalars& cx, long k, bool primed,
                                    const std::vector<std::pair<Partition, long>>& states,
                                    ModeWindow w, long P);

// J_k g = g J_{-k} on a test state (Q-graded scalars).
CheckResult verify_1d_symmetry(const QSeriesScalars& cx, long k,
                               const Partition& lambda, long s, ModeWindow w, long P,
                               long size_cap);

inline CheckResult verify_anticommutators(ModeWindow w) {
    CheckResult res;
    res.id = "anticommutators";
    res.params["window"] = std::to_string(w.lo) + ".." + std::to_string(w.hi);
    // convention: psi_m psi*_n + psi*_n psi_m = delta_{m+n,0} (standard index
    // pairing; psi_m creates level -m)
    const long width = w.width();
    if (width > 16) throw domain_error("anticommutator sweep window too large");
    const unsigned long total = 1UL << width;

    auto create_mask = [&](unsigned long mask, long level, int& sign) -> std::optional<unsigned long> {
        unsigned long bit = 1UL << (level - w.lo);
        if (mask & bit) return std::nullopt;
        unsigned long above = mask >> (level - w.lo + 1);
        sign = (__builtin_popcountl(above) % 2 == 0) ? 1 : -1;
        return mask | bit;
    };
    auto annihilate_mask = [&](unsigned long mask, long level, int& sign) -> std::optional<unsigned long> {
        unsigned long bit = 1UL << (level - w.lo);
        if (!(mask & bit)) return std::nullopt;
        unsigned long above = mask >> (level - w.lo + 1);
        sign = (__builtin_popcountl(above) % 2 == 0) ? 1 : -1;
        return mask & ~bit;
    };

    // psi_m acts as create(-m); psi*_n acts as annihilate(n). When both
    // composition orders survive they land on the same occupancy mask, so the
    // residual per basis state is a single signed integer.
    for (long m = -w.hi; m <= -w.lo; ++m) {
        for (long n = w.lo; n <= w.hi; ++n) {
            for (unsigned long st = 0; st < total; ++st) {
                long coeff = 0;
                unsigned long outmask = st;
                bool have = false;
                int s1, s2;
                if (auto a = annihilate_mask(st, n, s1)) {
                    if (auto b = create_mask(*a, -m, s2)) {
                        coeff += s1 * s2;
                        outmask = *b;
                        have = true;
                    }
                }
                if (auto a = create_mask(st, -m, s1)) {
                    if (auto b = annihilate_mask(*a, n, s2)) {
                        coeff += s1 * s2;
                        outmask = *b;
                        have = true;
                    }
                }
                long expect = (m + n == 0) ? 1 : 0;
                bool ok = expect ? (have && outmask == st && coeff == 1)
                                 : (coeff == 0);
                if (!ok) {
                    res.fail("psi psi* anticommutator off at m=" + std::to_string(m) +
                             " n=" + std::to_string(n));
                    return res;
                }
            }
        }
    }
    // doubly fermionic relations: psi_m psi_n + psi_n psi_m = 0 and starred.
    for (long m = -w.hi; m <= -w.lo; ++m) {
        for (long n = -w.hi; n <= -w.lo; ++n) {
            for (unsigned long st = 0; st < total; ++st) {
                long c1 = 0, c2 = 0;
                int s1, s2;
                if (auto a = create_mask(st, -n, s1))
                    if (auto b = create_mask(*a, -m, s2)) c1 += s1 * s2;
                if (auto a = create_mask(st, -m, s1))
                    if (auto b = create_mask(*a, -n, s2)) c1 += s1 * s2;
                if (auto a = annihilate_mask(st, m, s1))
                    if (auto b = annihilate_mask(*a, n, s2)) c2 += s1 * s2;
                if (auto a = annihilate_mask(st, n, s1))
                    if (auto b = annihilate_mask(*a, m, s2)) c2 += s1 * s2;
                if (c1 != 0 || c2 != 0) {
                    res.fail("doubly fermionic anticommutator off at m=" +
                             std::to_string(m) + " n=" + std::to_string(n));
                    return res;
                }
            }
        }
    }
    return res;
}

inline CheckResult verify_shift_symmetries(const SeriesScalars& cx, long k, bool primed,
                                           const std::vector<std::pair<Partition, long>>& states,
                                           ModeWindow w, long P) {
    CheckResult res;
    res.id = primed ? "shift-symmetry-primed" : "shift-symmetry";
    res.params["k"] = std::to_string(k);
    res.params["window"] = std::to_string(w.lo) + ".." + std::to_string(w.hi);
    res.params["factors"] = std::to_string(P);
    // dropping factor i of the principal products leaves residuals of relative
    // order 2i-1, so finite P certifies 2P+1 orders above the leading one
    const long rel = 2 * P + 1;
    res.params["relative_orders"] = std::to_string(rel);

    for (const auto& [lam, s] : states) {
        // coverage cap on partition sizes: the chains below are monotone in
        // size (lowering first, then raising), so every retained state is
        // complete for its own coefficient whatever the cap
        const long cap = lam.size() + 2 * k + 6;
        FockVector<USeries> v;
        fv_add(v, FockState::from_partition(lam, s, w), cx.one());

        auto gg = [&](const FockVector<USeries>& x, long use_cap) {
            FockOpts opts;
            opts.prune = false;
            opts.size_cap = use_cap;
            auto t = apply_vertex_principal(cx, primed ? Vertex::GammaPrimePlus : Vertex::GammaPlus,
                                            false, P, x, opts);
            return apply_vertex_principal(cx, primed ? Vertex::GammaPrimeMinus : Vertex::GammaMinus,
                                          false, P, t, opts);
        };
        FockOpts jopts;
        jopts.w0_sandwich = true;
        jopts.size_cap = cap + k;
        jopts.prune = false;

        FockVector<USeries> lhs, rhs;
        USeries cterm = series_inv(USeries::one() - USeries::monomial(2 * k),
                                   rel + 2 * (k + 1) * (cap + k + std::abs(s) + 2));
        if (!primed) {
            // G- G+ H_k v  vs  (-1)^k S [G- G+ v] + q^k/(1-q^k) G- G+ v
            lhs = gg(apply_diagonal(cx, Bilinear::H, k, v), cap);
            // the sandwich lowers by k afterwards, so raise the cap by k here
            auto base = gg(v, cap + k);
            rhs = apply_J(cx, k, base, jopts);
            if (k % 2 != 0)
                for (auto& [st, c] : rhs) c = c * Rat(-1);
            USeries cc = cterm * USeries::monomial(2 * k);
            for (const auto& [st, c] : gg(v, cap)) fv_add(rhs, st, c * cc);
        } else {
            // H_{-k} G'- G'+ v  vs  G'- G'+ S' v - 1/(1-q^k) G'- G'+ v
            lhs = apply_diagonal(cx, Bilinear::H, -k, gg(v, cap));
            rhs = gg(apply_J(cx, -k, v, jopts), cap);
            USeries cc = cterm * Rat(-1);
            for (const auto& [st, c] : gg(v, cap)) fv_add(rhs, st, c * cc);
        }

        // carried cutoffs already encode the P-truncation trust; compare the
        // stored content on states inside the cap
        auto diff = fv_sub(lhs, rhs);
        // the central constant acts at the input state itself: the check is
        // only meaningful if that coefficient is trusted past order q^k
        long input_cut = -1;
        FockState in_st = FockState::from_partition(lam, s, w);
        auto it_l = lhs.find(in_st);
        auto it_r = rhs.find(in_st);
        if (it_l != lhs.end()) input_cut = it_l->second.cutoff();
        if (it_r != rhs.end()) {
            long rc = it_r->second.cutoff();
            input_cut = (input_cut < 0) ? rc : std::min(input_cut, rc);
        }
        res.params["input_state_order"] = std::to_string(input_cut);
        for (auto it = diff.begin(); it != diff.end();) {
            if (state_size(it->first) > cap) it = diff.erase(it);
            else ++it;
        }
        for (const auto& [st, c] : diff) {
            if (!c.is_zero()) {
                std::string msg = "state " + lam.to_string() + ", s=" + std::to_string(s) +
                                  ": " + st.to_string() + " -> " + c.to_string();
                res.fail(msg);
                return res;
            }
        }
        if (input_cut <= 2 * k) {
            res.fail("vacuous check: trusted order too small at the input state");
            return res;
        }
    }
    return res;
}

inline CheckResult verify_1d_symmetry(const QSeriesScalars& cx, long k,
                                      const Partition& lambda, long s, ModeWindow w,
                                      long P, long size_cap) {
    CheckResult res;
    res.id = "commute-through-g";
    res.params["k"] = std::to_string(k);
    res.params["state"] = lambda.to_string() + ", s=" + std::to_string(s);
    res.params["size_cap"] = std::to_string(size_cap);
    res.params["factors"] = std::to_string(P);

    FockState in = FockState::from_partition(lambda, s, w);

    // g v, exact under the cap, with every state of size <= cap materialized
    // so the J_k lowering sees honest (possibly zero-with-cutoff) parents
    auto materialize = [&](FockVector<QPoly>& gv, const FockState& input) {
        for (const auto& mu : enumerate_partitions(size_cap)) {
            FockState st = FockState::from_partition(mu, s, w);
            if (!gv.count(st))
                gv.emplace(st, g_exact_zero(cx, false, input, st, size_cap));
        }
    };

    auto gv = apply_g_exact(cx, false, P, in, size_cap);
    materialize(gv, in);
    auto lhs = apply_J(cx, k, gv);

    FockVector<QPoly> v;
    fv_add(v, in, cx.one());
    auto raised = apply_J(cx, -k, v);
    FockVector<QPoly> rhs;
    for (const auto& [st, c] : raised) {
        auto gw = apply_g_exact(cx, false, P, st, size_cap);
        materialize(gw, st);
        for (const auto& [st2, c2] : gw) fv_add(rhs, st2, c2 * c);
    }

    // compare on all states complete under the cap
    auto diff = fv_sub(lhs, rhs);
    long min_cut = QPoly::kInf;
    for (const auto& [st, c] : lhs)
        if (state_size(st) <= lambda.size() + 2 * k)
            min_cut = std::min<long>(min_cut, c.u_cutoff());
    res.params["verified_order_small_states"] = std::to_string(min_cut);
    for (const auto& [st, c] : diff) {
        if (state_size(st) > size_cap - k) continue;
        if (!c.is_zero()) {
            res.fail(st.to_string() + " -> " + c.to_string());
            return res;
        }
    }
    res.require(min_cut > 2 * k, "vacuous check: trusted order too small");
    return res;
}

} // namespace crystal
