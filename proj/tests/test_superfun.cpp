#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adef/superfun.hpp"
#include "adef/testfns.hpp"

using namespace adef;

namespace {
constexpr int K = 4, N = 3;
const std::vector<double> kGrid = {-2.5, -1.5, -0.6, 0.0, 0.4, 1.1, 2.2};

double diff_norm(const SuperFun& a, const SuperFun& b) {
    return sup_norm(a - b, kGrid);
}
} // namespace

TEST_CASE("xi parts square to zero; even functions commute through xi") {
    SymExpr b = SymExpr::bump(0.0, 1.0);
    SuperFun xb = SuperFun::xi(b, K, N);
    CHECK(xb.product(xb).is_zero());
    SuperFun x = SuperFun::body(SymExpr::x(), K, N);
    SuperFun lhs = x.product(xb);
    SuperFun rhs = SuperFun::xi(SymExpr::x() * b, K, N);
    CHECK(diff_norm(lhs, rhs) < 1e-14);
}

TEST_CASE("graded supercommutativity of the product on random homogeneous elements") {
    GenConfig cfg;
    Rng rng(99);
    for (int it = 0; it < 12; ++it) {
        SuperFun f = random_de_element(rng, it % 2 ? ElemClass::Odd : ElemClass::Even, cfg);
        SuperFun g = random_de_element(rng, it % 3 ? ElemClass::Odd : ElemClass::Even, cfg);
        // eps parities: Odd class -> eps=1 (xi part), Even -> eps=0
        int ef = f.terms().front().sec == Sector::Xi ? 1 : 0;
        int eg = g.terms().front().sec == Sector::Xi ? 1 : 0;
        double sign = (ef * eg) % 2 ? -1.0 : 1.0;
        CHECK(diff_norm(f.product(g), g.product(f).scaled(sign)) < 1e-12);
    }
}

TEST_CASE("product is associative") {
    GenConfig cfg;
    Rng rng(7);
    for (int it = 0; it < 6; ++it) {
        SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun g = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun h = random_de_element(rng, ElemClass::Mixed, cfg);
        CHECK(diff_norm(f.product(g).product(h), f.product(g.product(h))) < 1e-11);
    }
}

TEST_CASE("xi integral picks the expected components") {
    SymExpr b = SymExpr::bump(0.0, 1.0);
    SymExpr x2 = SymExpr::poly({0.0, 0.0, 1.0});
    SuperFun f = SuperFun::xi(b, K, N) + SuperFun::body(x2, K, N);
    SuperFun w1 = f.xi_integral_weight1();
    REQUIRE(w1.terms().size() == 1);
    CHECK(w1.terms()[0].sec == Sector::Body);
    CHECK(w1.terms()[0].fn.eval(0.0) == doctest::Approx(b.eval(0.0)));
    SuperFun wxi = f.xi_integral_weightxi();
    REQUIRE(wxi.terms().size() == 1);
    CHECK(wxi.terms()[0].fn.eval(2.0) == doctest::Approx(4.0));
    CHECK(SuperFun::zero(K, N).xi_integral_weight1().is_zero());
}

TEST_CASE("parity bookkeeping includes theta coefficients") {
    SymExpr b = SymExpr::bump(0.0, 1.0);
    SuperFun xb = SuperFun::xi(b, K, N);
    CHECK(xb.epsilon() == 0); // eps=1, shifted parity 0
    SuperFun body = SuperFun::body(SymExpr::poly({0, 0, 1}), K, N);
    CHECK(body.epsilon() == 1);
    SuperFun colored = body.ring_scaled(DeformRing::theta(K, N, 1));
    CHECK(colored.epsilon() == 0); // 1 + 1 mod 2
    SuperFun mixed = xb + body;
    CHECK(!mixed.epsilon().has_value());
    auto parts = mixed.split_epsilon();
    CHECK(parts[0].epsilon() == 0);
    CHECK(parts[1].epsilon() == 1);
    CHECK(diff_norm(parts[0] + parts[1], mixed) < 1e-15);
}

TEST_CASE("splitting is idempotent and pointwise faithful") {
    GenConfig cfg;
    Rng rng(123);
    SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg)
                     .ring_scaled(DeformRing::one(K, N) + DeformRing::theta(K, N, 2));
    auto parts = f.split_epsilon();
    for (double x : kGrid) {
        auto v = f.eval(x);
        auto v0 = parts[0].eval(x);
        auto v1 = parts[1].eval(x);
        CHECK((v.xi - v0.xi - v1.xi).max_abs() < 1e-15);
        CHECK((v.body - v0.body - v1.body).max_abs() < 1e-15);
    }
    auto again = parts[0].split_epsilon();
    CHECK(again[1].is_zero());
}

TEST_CASE("generators are deterministic and land in DE") {
    GenConfig cfg;
    Rng r1(42), r2(42);
    SuperFun a = random_de_element(r1, ElemClass::Mixed, cfg);
    SuperFun b = random_de_element(r2, ElemClass::Mixed, cfg);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.xi_parts_compact());
    SuperFun odd = random_de_element(r1, ElemClass::Odd, cfg);
    for (const auto& t : odd.terms()) CHECK(t.sec == Sector::Xi);
    // supports inside [-R, R]
    for (const auto& t : a.terms()) {
        if (t.sec != Sector::Xi) continue;
        auto s = t.fn.support();
        REQUIRE(s.has_value());
        CHECK(s->lo >= -cfg.support_radius);
        CHECK(s->hi <= cfg.support_radius);
    }
}

TEST_CASE("superfun json round trip") {
    GenConfig cfg;
    Rng rng(5);
    SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg)
                     .ring_scaled(DeformRing::hbar(K, N) + DeformRing::theta(K, N, 3));
    SuperFun back = SuperFun::from_json(f.to_json(), K, N);
    CHECK(diff_norm(f, back) < 1e-15);
}
