#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adef/deformation.hpp"

using namespace adef;

namespace {
constexpr int K = 4, N = 3;

RunConfig cfg() {
    RunConfig c;
    c.K = K;
    c.n = N;
    return c;
}

DeformRing hb(int p = 1) { return DeformRing::hbar(K, N, p); }
DeformRing th(int k) { return DeformRing::theta(K, N, k); }

TestSet small_tests(std::uint64_t seed, int count) {
    TestSet ts = TestSet::make(seed, count, {});
    // witness triples cover the sectors random draws may miss
    for (const char* tag : {"xi_triple", "J_4_5", "J_3_4", "J_1_3"})
        ts.triples.push_back(ts.witness(tag));
    return ts;
}

DeformParams family1() {
    DeformParams p = DeformParams::empty(K, N);
    p.c[4] = hb();
    return p;
}

DeformParams family2() {
    DeformParams p = DeformParams::empty(K, N);
    p.c[1] = hb() * th(1);
    p.c[2] = hb() * th(2);
    p.c[5] = hb();
    p.c[6] = hb();
    p.M.push_back({hb(), Distribution::delta(0.0)});
    return p;
}

DeformParams family3() {
    DeformParams p = DeformParams::empty(K, N);
    for (int i = 1; i <= 6; ++i) p.c[i] = hb() * th(1);
    p.M.push_back({hb() * th(1), Distribution::delta(0.0)});
    return p;
}

DeformParams family4() {
    DeformParams p = DeformParams::empty(K, N);
    p.c[1] = hb() * th(1);
    p.c[2] = hb() * th(2);
    p.c[3] = hb(3) * th(1) * th(2) * th(3);
    p.c[4] = hb(2) * th(1) * th(2);
    p.c[5] = hb(2) * th(2) * th(3);
    p.c[6] = hb(2) * (th(3) * th(1) + th(2) * th(3));
    p.M.push_back({hb(2) * th(1) * th(2), Distribution::delta(0.0)});
    return p;
}
} // namespace

TEST_CASE("parameter validation") {
    DeformParams p = DeformParams::empty(K, N);
    p.c[1] = hb(); // must be odd
    CHECK_THROWS_AS(p.validate(), ParityViolation);
    p = DeformParams::empty(K, N);
    p.c[4] = th(1) * th(2); // no hbar: fails augmentation (theta degree > power)
    CHECK_THROWS_AS(p.validate(), AugmentationViolation);
    p = DeformParams::empty(K, N);
    p.c[4] = DeformRing::one(K, N);
    CHECK_THROWS_AS(p.validate(), AugmentationViolation);
    CHECK_NOTHROW(family1().validate());
    CHECK_NOTHROW(family2().validate());
    CHECK_NOTHROW(family3().validate()); // common-theta family accepted
    CHECK_NOTHROW(family4().validate());
}

TEST_CASE("constraint checker on the listed relations") {
    DeformParams p = DeformParams::empty(K, N);
    p.c[4] = hb();
    p.c[5] = hb();
    ConstraintReport r = check_constraints(p);
    REQUIRE(!r.ok());
    CHECK(r.violations[0].relation == "c4*c5");

    DeformParams q = DeformParams::empty(K, N);
    q.c[4] = hb(2) * th(1) * th(2);
    q.c[5] = hb(2) * th(1) * th(3);
    CHECK(check_constraints(q).ok()); // theta1 squared kills the product

    DeformParams s = DeformParams::empty(K, N);
    s.c[3] = hb(3) * th(1) * th(2) * th(3);
    s.M.push_back({hb(2) * th(2) * th(3), Distribution::delta(0.0)});
    CHECK(check_constraints(s).ok()); // truncation in theta degree

    CHECK(check_constraints(family1()).family == "defform1");
    CHECK(check_constraints(family2()).family == "defform2");
    CHECK(check_constraints(family3()).family == "defform3");
    CHECK(check_constraints(family4()).family == "defform4");
}

TEST_CASE("trivial parameters give the plain bracket") {
    auto c = cfg();
    DeformParams p = DeformParams::empty(K, N);
    Deformation d = build_deformation(p);
    TestSet ts = small_tests(601, 3);
    OrderReport rep = verify_jacobi_orderwise(d.C, K, ts, c);
    CHECK(rep.all_pass());
    for (const auto& row : rep.rows) CHECK(row.residual < 1e-10);
}

TEST_CASE("resolvent family passes order by order") {
    auto c = cfg();
    Deformation d = build_deformation(family1());
    TestSet ts = small_tests(602, 4);
    OrderReport rep = verify_jacobi_orderwise(d.C, K, ts, c);
    for (const auto& row : rep.rows)
        CHECK_MESSAGE(row.pass, "order " << row.order << " residual " << row.residual);
}

TEST_CASE("mixed family with all correction terms passes") {
    auto c = cfg();
    Deformation d = build_deformation(family2());
    TestSet ts = small_tests(603, 3);
    OrderReport rep = verify_jacobi_orderwise(d.C, K, ts, c);
    for (const auto& row : rep.rows)
        CHECK_MESSAGE(row.pass, "order " << row.order << " residual " << row.residual);
}

TEST_CASE("single odd direction family passes") {
    auto c = cfg();
    Deformation d = build_deformation(family3());
    CHECK(d.family == "defform3");
    TestSet ts = small_tests(604, 3);
    OrderReport rep = verify_jacobi_orderwise(d.C, K, ts, c);
    for (const auto& row : rep.rows)
        CHECK_MESSAGE(row.pass, "order " << row.order << " residual " << row.residual);
}

TEST_CASE("theta-bivector family passes") {
    auto c = cfg();
    Deformation d = build_deformation(family4());
    TestSet ts = small_tests(605, 3);
    OrderReport rep = verify_jacobi_orderwise(d.C, K, ts, c);
    for (const auto& row : rep.rows)
        CHECK_MESSAGE(row.pass, "order " << row.order << " residual " << row.residual);
}

TEST_CASE("violated constraints show up at the product order") {
    auto c = cfg();
    TestSet ts = small_tests(606, 3);
    SUBCASE("c4 c5") {
        DeformParams p = family1();
        p.c[5] = hb();
        OrderReport rep = verify_jacobi_orderwise(build_deformation(p).C, K, ts, c);
        REQUIRE(rep.first_fail().has_value());
        CHECK(*rep.first_fail() == 2);
        CHECK(rep.rows[2].residual > c.nu);
    }
    SUBCASE("c4 c1") {
        DeformParams p = family1();
        p.c[1] = hb() * th(1);
        OrderReport rep = verify_jacobi_orderwise(build_deformation(p).C, K, ts, c);
        REQUIRE(rep.first_fail().has_value());
        CHECK(*rep.first_fail() == 2);
    }
    SUBCASE("c3 M") {
        DeformParams p = DeformParams::empty(K, N);
        p.c[3] = hb() * th(3);
        p.M.push_back({hb(), Distribution::delta(0.0)});
        OrderReport rep = verify_jacobi_orderwise(build_deformation(p).C, K, ts, c);
        REQUIRE(rep.first_fail().has_value());
        CHECK(*rep.first_fail() == 2);
    }
}

TEST_CASE("correction terms are necessary") {
    auto c = cfg();
    TestSet ts = small_tests(607, 3);
    for (const std::string omit : {"m2_8", "m2_9", "m2_10", "m2_11"}) {
        Deformation d = build_deformation(family2(), {omit});
        OrderReport rep = verify_jacobi_orderwise(d.C, K, ts, c);
        CHECK_MESSAGE(rep.first_fail().has_value(), "omitting " << omit << " still passes?");
        if (rep.first_fail())
            CHECK_MESSAGE(rep.rows[static_cast<size_t>(*rep.first_fail())].residual > c.nu,
                          omit << " residual too small");
    }
}

TEST_CASE("normalize_c4: listed shapes") {
    SUBCASE("already normal: identity") {
        DeformParams p = DeformParams::empty(K, N);
        p.c[4] = hb(2) * th(1) * th(2);
        auto [q, bc] = normalize_c4(p);
        CHECK(bc.identity);
    }
    SUBCASE("permutation") {
        DeformParams p = DeformParams::empty(K, N);
        p.c[4] = hb(2) * th(2) * th(3);
        auto [q, bc] = normalize_c4(p);
        CHECK(!q.c[4].is_zero());
        CHECK(q.c[4].coeff(2, 0b011) != 0.0);
        CHECK(q.c[4].coeff(2, 0b110) == 0.0);
        CHECK(q.c[4].coeff(2, 0b101) == 0.0);
    }
    SUBCASE("full bivector") {
        DeformParams p = DeformParams::empty(K, N);
        p.c[4] = hb(2) * (th(2) * th(3) + th(3) * th(1) + th(1) * th(2));
        auto [q, bc] = normalize_c4(p);
        CHECK(q.c[4].coeff(2, 0b011) != 0.0);
        CHECK(q.c[4].coeff(2, 0b110) == 0.0);
        CHECK(q.c[4].coeff(2, 0b101) == 0.0);
    }
    SUBCASE("rejects wrong shapes") {
        DeformParams p = DeformParams::empty(K, N);
        p.c[4] = hb();
        CHECK_THROWS_AS(normalize_c4(p), NotNormalizable);
    }
}

TEST_CASE("normalize_c4 keeps the orderwise verdicts") {
    auto c = cfg();
    TestSet ts = small_tests(608, 2);
    // a passing set and a failing set; verdicts must survive the basis change
    std::vector<DeformParams> sets;
    {
        DeformParams p = family4();
        p.c[4] = hb(2) * (th(2) * th(3) + th(1) * th(2));
        p.c[5] = hb(2) * th(2) * th(3);
        p.c[6] = DeformRing::zero(K, N);
        p.c[3] = DeformRing::zero(K, N);
        p.M.clear();
        sets.push_back(p);
    }
    {
        DeformParams p = sets[0];
        p.c[5] = hb(); // breaks c4 c5
        sets.push_back(p);
    }
    for (const auto& p : sets) {
        auto [q, bc] = normalize_c4(p);
        OrderReport before = verify_jacobi_orderwise(build_deformation(p).C, K, ts, c);
        OrderReport after = verify_jacobi_orderwise(build_deformation(q).C, K, ts, c);
        CHECK(before.all_pass() == after.all_pass());
        CHECK(before.first_fail() == after.first_fail());
    }
}

TEST_CASE("params json round trip") {
    DeformParams p = family4();
    nlohmann::json j = p.to_json();
    DeformParams q = DeformParams::from_json(j);
    for (int i = 1; i <= 6; ++i) CHECK((p.c[i] - q.c[i]).is_zero());
    REQUIRE(q.M.size() == p.M.size());
    CHECK((q.M[0].coeff - p.M[0].coeff).is_zero());
    // compact CLI form
    nlohmann::json doc = {
        {"K", 4},
        {"n", 3},
        {"c4", {{{"hbar", 1}, {"theta", nlohmann::json::array()}, {"value", 1.0}}}},
        {"M", nlohmann::json::array(
                  {{{"coeff", {{{"hbar", 1}, {"theta", nlohmann::json::array()}, {"value", 0.5}}}},
                    {"dist", {{"type", "delta"}, {"location", 0.25}}}}})},
    };
    DeformParams r = DeformParams::from_json(doc);
    CHECK(r.c[4].coeff(1, 0) == 1.0);
    CHECK(r.M[0].coeff.coeff(1, 0) == 0.5);
}
