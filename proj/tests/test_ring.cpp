#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adef/ring.hpp"

using namespace adef;

namespace {
constexpr int K = 4, N = 3;

DeformRing th(int k) { return DeformRing::theta(K, N, k); }
DeformRing hb(int p = 1) { return DeformRing::hbar(K, N, p); }

std::vector<DeformRing> basis_monomials() {
    std::vector<DeformRing> out;
    for (int p = 0; p <= K; ++p)
        for (std::uint32_t m = 0; m < 8; ++m)
            out.push_back(DeformRing::monomial(K, N, p, m, 1.0));
    return out;
}
} // namespace

TEST_CASE("theta products: canonical order, odd exchange, nilpotency") {
    DeformRing a = hb() * th(1);
    DeformRing b = hb() * th(2);
    DeformRing ab = a * b;
    CHECK(ab.coeff(2, 0b011) == doctest::Approx(1.0));
    DeformRing ba = b * a;
    CHECK(ba.coeff(2, 0b011) == doctest::Approx(-1.0));
    CHECK((a * a).is_zero());
}

TEST_CASE("truncation drops high hbar powers") {
    DeformRing h2 = hb(2);
    DeformRing h3 = hb(3);
    CHECK((h2 * h3).is_zero()); // order 5 > K
    CHECK(!(h2 * hb(2)).is_zero());
}

TEST_CASE("associativity and supercommutativity on the full monomial basis") {
    auto basis = basis_monomials();
    for (const auto& a : basis) {
        for (const auto& b : basis) {
            DeformRing ab = a * b;
            DeformRing ba = b * a;
            int pa = *a.eps1(), pb = *b.eps1();
            double sign = (pa * pb) % 2 ? -1.0 : 1.0;
            CHECK((ab - ba.scaled(sign)).is_zero());
            for (const auto& c : basis) {
                CHECK((((a * b) * c) - (a * (b * c))).is_zero());
            }
        }
    }
}

TEST_CASE("inverse of a unit is exact in the truncated ring") {
    DeformRing one = DeformRing::one(K, N);
    SUBCASE("1 + hbar") {
        DeformRing a = one + hb();
        DeformRing inv = a.inverse_unit();
        CHECK((inv * a - one).is_zero());
        CHECK(inv.coeff(1, 0) == doctest::Approx(-1.0));
        CHECK(inv.coeff(2, 0) == doctest::Approx(1.0));
    }
    SUBCASE("1 + hbar^2 theta1 theta2: nilpotent correction") {
        DeformRing a = one + hb(2) * th(1) * th(2);
        DeformRing inv = a.inverse_unit();
        CHECK((inv * a - one).is_zero());
        CHECK(inv.coeff(2, 0b011) == doctest::Approx(-1.0));
        CHECK(inv.coeff(4, 0) == doctest::Approx(0.0));
    }
    SUBCASE("identity") { CHECK((one.inverse_unit() - one).is_zero()); }
    SUBCASE("rejects non-units") {
        CHECK_THROWS_AS(hb().inverse_unit(), NotUnitForm);
        CHECK_THROWS_AS((one.scaled(2.0)).inverse_unit(), NotUnitForm);
        CHECK_THROWS_AS((one + th(1)).inverse_unit(), NotUnitForm);
    }
}

TEST_CASE("parity detection") {
    CHECK(*th(1).eps1() == 1);
    CHECK(*(th(1) * th(2)).eps1() == 0);
    CHECK(!(th(1) + th(1) * th(2) * hb()).eps1().has_value());
    CHECK(*DeformRing::zero(K, N).eps1() == 0);
}

TEST_CASE("theta substitution: permutation and expansion") {
    // theta1 -> theta2', theta2 -> theta1', theta3 -> theta3'
    std::vector<std::vector<DeformRing>> P(3, std::vector<DeformRing>(3, DeformRing::zero(K, N)));
    P[0][1] = DeformRing::one(K, N);
    P[1][0] = DeformRing::one(K, N);
    P[2][2] = DeformRing::one(K, N);
    DeformRing m = hb(2) * th(1) * th(2);
    DeformRing s = m.substitute_theta(P);
    CHECK(s.coeff(2, 0b011) == doctest::Approx(-1.0)); // theta2' theta1' = -theta1' theta2'
    // linear combination: theta1 -> theta1' + theta2'
    std::vector<std::vector<DeformRing>> A(3, std::vector<DeformRing>(3, DeformRing::zero(K, N)));
    A[0][0] = DeformRing::one(K, N);
    A[0][1] = DeformRing::one(K, N);
    A[1][1] = DeformRing::one(K, N);
    A[2][2] = DeformRing::one(K, N);
    DeformRing s2 = (hb() * th(1)).substitute_theta(A);
    CHECK(s2.coeff(1, 0b001) == doctest::Approx(1.0));
    CHECK(s2.coeff(1, 0b010) == doctest::Approx(1.0));
    // squares stay zero under substitution
    DeformRing sq = (hb() * th(1)) * (hb() * th(1));
    CHECK(sq.substitute_theta(A).is_zero());
}

TEST_CASE("json round trip, sorted triples") {
    DeformRing r = hb() + hb(2) * th(1) * th(3).scaled(0.5) + th(2) * hb();
    DeformRing back = DeformRing::from_json(r.to_json(), K, N);
    CHECK((r - back).is_zero());
    CHECK_THROWS_AS(r * DeformRing::one(3, 3), TruncationMismatch);
}
