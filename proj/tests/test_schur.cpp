#include <catch2/catch.hpp>

#include "crystal/schur.hpp"

using namespace crystal;

TEST_CASE("principal specialization, small shapes", "[schur]") {
    CHECK((schur_principal(Partition(), 20) - USeries::one().truncated(20)).is_zero());

    // s_(1) = u/(1-u^2) = u + u^3 + u^5 + ...
    USeries s1 = schur_principal(Partition({1}), 15);
    for (long e = 1; e < 15; e += 2) CHECK(s1.coeff(e) == Rat(1));
    CHECK(s1.coeff(2) == Rat(0));

    // s_(2) = q/((1-q)(1-q^2)) as a u-series
    USeries s2 = schur_principal(Partition({2}), 20);
    USeries den = (USeries::one() - USeries::monomial(2)) *
                  (USeries::one() - USeries::monomial(4));
    USeries expect = series_inv(den, 18) * USeries::monomial(2);
    CHECK((s2 - expect).is_zero());
}

TEST_CASE("hook form equals tableau sum through size 6", "[schur][oracle]") {
    const USeries::exp_t cutoff = 30;
    for (const auto& lam : enumerate_partitions(6)) {
        USeries hook = schur_principal(lam, cutoff);
        USeries tab = schur_principal_tableaux(lam, cutoff);
        INFO("lambda = " << lam.to_string());
        CHECK((hook - tab).is_zero());
    }
}

TEST_CASE("leading order and hook statistics line up with the conjugate", "[schur]") {
    for (const auto& lam : enumerate_partitions(6)) {
        if (lam.empty()) continue;
        USeries s = schur_principal(lam, 40);
        CHECK(s.ord_or_cutoff() == lam.size() + 2 * lam.n_stat());
        // n(lam) + n(lam^t) + |lam| = sum of hook lengths, both sides computed
        // from independent walks of the diagram
        long hooks = 0;
        for (long h : lam.hooks()) hooks += h;
        CHECK(lam.n_stat() + lam.conjugate().n_stat() + lam.size() == hooks);
    }
}

TEST_CASE("skew principal specialization", "[schur][skew]") {
    Partition lam({2, 1}), mu({1});
    CHECK((skew_schur_principal(lam, lam, 20) - USeries::one().truncated(20)).is_zero());
    CHECK(skew_schur_principal(mu, lam, 20).is_zero());

    // Jacobi-Trudi vs tableau enumeration, cutoff-bounded entries
    const USeries::exp_t cutoff = 24;
    long max_entry = (cutoff + 2) / 2;
    for (const auto& l : enumerate_partitions(4)) {
        for (const auto& m : enumerate_partitions(3)) {
            if (!l.contains(m)) continue;
            USeries jt = skew_schur_principal(l, m, cutoff);
            USeries tab = skew_schur_principal_tableaux(l, m, max_entry, cutoff);
            INFO("lambda = " << l.to_string() << " mu = " << m.to_string());
            CHECK((jt - tab).is_zero());
        }
    }
}

TEST_CASE("truncated principal specialization is the few-variable Schur sum", "[schur]") {
    // with entries bounded by 3, s_(1) = q^{1/2} + q^{3/2} + q^{5/2}
    USeries s = skew_schur_principal_tableaux(Partition({1}), Partition(), 3);
    CHECK(s == USeries::monomial(1) + USeries::monomial(3) + USeries::monomial(5));
}

TEST_CASE("cauchy identities", "[schur][cauchy]") {
    CHECK(verify_cauchy(false, 6, 20).passed());
    CHECK(verify_cauchy(true, 6, 20).passed());
    CHECK(verify_cauchy(false, 0, 8).passed());
    CHECK(verify_cauchy(true, 0, 8).passed());
    CHECK(verify_cauchy(false, 8, 20).passed());
    CHECK(verify_cauchy(true, 8, 20).passed());
}
