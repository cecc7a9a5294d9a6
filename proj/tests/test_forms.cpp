#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adef/forms.hpp"
#include "adef/testfns.hpp"

using namespace adef;

namespace {
constexpr int K = 4, N = 3;
const std::vector<double> kGrid = {-2.5, -1.5, -0.6, 0.0, 0.4, 1.1, 2.2};

double nrm(const SuperFun& a) { return sup_norm(a, kGrid); }

std::vector<FormPtr> all_forms_with(const Distribution& M) {
    std::vector<FormPtr> out;
    for (int i = 0; i <= 11; ++i) {
        FormId id = static_cast<FormId>(i);
        out.push_back(form_needs_distribution(id) ? make_form(id, M) : make_form(id));
    }
    return out;
}
} // namespace

TEST_CASE("antibracket component formulas") {
    SymExpr b = SymExpr::bump(0.0, 1.0);
    SuperFun x = SuperFun::body(SymExpr::x(), K, N);
    CHECK(antibracket(x, x).is_zero());
    // [xi b, x] = -b
    SuperFun r = antibracket(SuperFun::xi(b, K, N), x);
    CHECK(nrm(r + SuperFun::body(b, K, N)) < 1e-14);
    // [xi f0, xi g0] = xi (f0' g0 - f0 g0')
    SymExpr f0 = SymExpr::poly({0.3, 1.0}) * b;
    SymExpr g0 = SymExpr::poly({-0.2, 0.5, 0.4}) * SymExpr::bump(0.2, 1.1);
    SuperFun lhs = antibracket(SuperFun::xi(f0, K, N), SuperFun::xi(g0, K, N));
    SuperFun rhs = SuperFun::xi(f0.diff(1) * g0 - f0 * g0.diff(1), K, N);
    CHECK(nrm(lhs - rhs) < 1e-13);
}

TEST_CASE("antibracket of DE elements lands in D (compact components)") {
    GenConfig cfg;
    Rng rng(11);
    for (int i = 0; i < 6; ++i) {
        SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun g = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun br = antibracket(f, g);
        for (const auto& t : br.terms()) {
            auto s = t.fn.support();
            REQUIRE(s.has_value());
            CHECK(s->finite());
        }
    }
}

TEST_CASE("superantisymmetry of every form, colored inputs included") {
    Distribution M = Distribution::delta(0.0);
    GenConfig cfg;
    Rng rng(17);
    auto coloreds = [&](int which) {
        SuperFun f = random_de_element(rng, which % 2 ? ElemClass::Odd : ElemClass::Even, cfg);
        switch (which % 3) {
        case 0: return f;
        case 1: return f.ring_scaled(DeformRing::theta(K, N, 1 + which % 3));
        default:
            return f.ring_scaled(DeformRing::hbar(K, N) *
                                 DeformRing::theta(K, N, 1) * DeformRing::theta(K, N, 2));
        }
    };
    for (const auto& form : all_forms_with(M)) {
        for (int it = 0; it < 4; ++it) {
            SuperFun f = coloreds(it);
            SuperFun g = coloreds(it + 5);
            auto pf = f.epsilon();
            auto pg = g.epsilon();
            REQUIRE(pf.has_value());
            REQUIRE(pg.has_value());
            double sgn = (*pf * *pg) % 2 ? -1.0 : 1.0;
            SuperFun anti = form->eval(f, g) + form->eval(g, f).scaled(sgn);
            CHECK_MESSAGE(nrm(anti) < 1e-10, form->name());
        }
    }
}

TEST_CASE("output parity equals form parity plus input parities") {
    Distribution M = Distribution::delta(0.0);
    GenConfig cfg;
    Rng rng(23);
    for (const auto& form : all_forms_with(M)) {
        for (int it = 0; it < 3; ++it) {
            SuperFun f = random_de_element(rng, it % 2 ? ElemClass::Odd : ElemClass::Even, cfg);
            SuperFun g =
                random_de_element(rng, (it + 1) % 2 ? ElemClass::Odd : ElemClass::Even, cfg);
            SuperFun v = form->eval(f, g);
            if (v.is_zero()) continue;
            int want = (form->epsilon() + *f.epsilon() + *g.epsilon()) % 2;
            auto parts = v.split_epsilon();
            CHECK_MESSAGE(nrm(parts[(want + 1) % 2]) == 0.0, form->name());
        }
    }
}

TEST_CASE("bilinearity over the ring with the stated coefficient convention") {
    // m(alpha f, g) = (-1)^{eps1(alpha) eps_m} alpha m(f,g)
    // m(f, beta g) = (-1)^{eps1(beta)(eps_m + eps(f))} beta m(f,g)
    Distribution M = Distribution::delta(0.3);
    GenConfig cfg;
    Rng rng(31);
    DeformRing alpha = DeformRing::theta(K, N, 1); // odd
    DeformRing beta = DeformRing::hbar(K, N) * DeformRing::theta(K, N, 2); // odd
    for (const auto& form : all_forms_with(M)) {
        SuperFun f = random_de_element(rng, ElemClass::Odd, cfg);
        SuperFun g = random_de_element(rng, ElemClass::Even, cfg);
        int em = form->epsilon();
        int ef = *f.epsilon();
        {
            SuperFun lhs = form->eval(f.ring_scaled(alpha), g);
            double s = (1 * em) % 2 ? -1.0 : 1.0;
            SuperFun rhs = form->eval(f, g).ring_scaled(alpha).scaled(s);
            CHECK_MESSAGE(nrm(lhs - rhs) < 1e-11, form->name());
        }
        {
            SuperFun lhs = form->eval(f, g.ring_scaled(beta));
            double s = (1 * (em + ef)) % 2 ? -1.0 : 1.0;
            SuperFun rhs = form->eval(f, g).ring_scaled(beta).scaled(s);
            CHECK_MESSAGE(nrm(lhs - rhs) < 1e-11, form->name());
        }
    }
}

TEST_CASE("m2_3: body product, vanishes on xi inputs") {
    SymExpr p1 = SymExpr::poly({0.2, 1.0});
    SymExpr p2 = SymExpr::poly({0.5, -0.3, 0.1});
    auto m3 = make_form(FormId::m2_3);
    SuperFun v = m3->eval(SuperFun::body(p1, K, N), SuperFun::body(p2, K, N));
    CHECK(nrm(v - SuperFun::body(p1 * p2, K, N)) < 1e-14);
    CHECK(m3->eval(SuperFun::xi(SymExpr::bump(0, 1), K, N), SuperFun::body(p2, K, N))
              .is_zero());
}

TEST_CASE("m2_1 on a repeated argument vanishes by parts") {
    SymExpr f0 = SymExpr::poly({0.3, 1.0, -0.4}) * SymExpr::bump(0.0, 1.0);
    auto m1 = make_form(FormId::m2_1);
    SuperFun f = SuperFun::xi(f0, K, N);
    CHECK(nrm(m1->eval(f, f)) < 1e-10);
}

TEST_CASE("m2_5 kills two bodies") {
    auto m5 = make_form(FormId::m2_5);
    SuperFun a = SuperFun::body(SymExpr::poly({0, 1, 0.5}), K, N);
    SuperFun b = SuperFun::body(SymExpr::poly({1, -1}), K, N);
    CHECK(m5->eval(a, b).is_zero());
}

TEST_CASE("m2_7(delta_a) evaluates the bracket body at a") {
    double a = 0.35;
    Distribution M = Distribution::delta(a);
    auto m7 = make_form(FormId::m2_7, M);
    GenConfig cfg;
    Rng rng(41);
    for (int i = 0; i < 5; ++i) {
        SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun g = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun br = antibracket(f, g);
        double expected = br.eval(a).body.coeff(0, 0);
        SuperFun v = m7->eval(f, g);
        CHECK(v.eval(0.0).body.coeff(0, 0) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("m2_9 equals Delta of the antibracket pointwise") {
    auto m9 = make_form(FormId::m2_9);
    GenConfig cfg;
    Rng rng(43);
    for (int i = 0; i < 5; ++i) {
        SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun g = random_de_element(rng, ElemClass::Mixed, cfg);
        SuperFun lhs = m9->eval(f, g);
        SuperFun rhs = apply_operator(Op1::Delta, antibracket(f, g));
        CHECK(nrm(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("operators: Delta, Euler, resolvent") {
    SymExpr b = SymExpr::bump(0.0, 1.0);
    SuperFun xb = SuperFun::xi(b, K, N);
    SuperFun d = apply_operator(Op1::Delta, xb);
    CHECK(nrm(d - SuperFun::body(b.diff(1), K, N)) < 1e-14);

    SuperFun one = SuperFun::body(SymExpr::constant(1.0), K, N);
    CHECK(nrm(apply_operator(Op1::Euler, one) - one) < 1e-14);
    SuperFun x = SuperFun::body(SymExpr::x(), K, N);
    CHECK(nrm(apply_operator(Op1::Euler, x) - x.scaled(0.5)) < 1e-14);

    // Resolvent(hbar) on x: x (1 - h/2 + h^2/4 - h^3/8 + h^4/16), since Nz x = x
    SuperFun r = apply_resolvent(DeformRing::hbar(K, N), x);
    for (int p = 0; p <= K; ++p) {
        double expect = std::pow(-0.5, p);
        CHECK(r.eval(2.0).body.coeff(p, 0) == doctest::Approx(2.0 * expect).epsilon(1e-14));
    }
    CHECK_THROWS_AS(apply_resolvent(DeformRing::one(K, N), x), ResolventPrecondition);
}

TEST_CASE("distribution application") {
    SymExpr b = SymExpr::bump(0.0, 1.0);
    CHECK(Distribution::delta(0.4).apply(b) == doctest::Approx(b.eval(0.4)));
    CHECK(Distribution::delta(0.4, 1).apply(b) == doctest::Approx(-b.diff(1).eval(0.4)));
    CHECK(Distribution::kernel_one().apply(b) == doctest::Approx(integrate(b)).epsilon(1e-12));
    CHECK(Distribution::kernel_one().in_E_prime() == false);
    CHECK(Distribution::delta(0.0, 1).in_E_prime() == true);
}

TEST_CASE("mu_tilde for a point delta") {
    double a = 1.3; // beyond the step transition
    Distribution mu = Distribution::delta(a).mu_tilde();
    REQUIRE(mu.deltas().empty());
    // theta(a - x) - theta_tilde(a): for x > a and a >= 1 this is -1
    SymExpr probe = SymExpr::bump(2.5, 0.5); // support right of a
    double v = mu.apply(probe);
    CHECK(v == doctest::Approx(-integrate(probe)).epsilon(1e-10));
    // for x < a (a >= 1): theta = 1, theta_tilde(a) = 1 -> 0
    SymExpr probe2 = SymExpr::bump(-2.5, 0.4);
    CHECK(std::abs(mu.apply(probe2)) < 1e-12);
    // mu = 0 gives 0
    Distribution z;
    CHECK(z.mu_tilde().apply(probe) == 0.0);
}

TEST_CASE("mu_tilde of a derivative delta has a delta part") {
    Distribution mu = Distribution::delta(0.0, 1).mu_tilde();
    REQUIRE(mu.deltas().size() == 1);
    CHECK(mu.deltas()[0].order == 0);
    CHECK(mu.deltas()[0].weight == doctest::Approx(-1.0));
    // <mu~, w> = theta~'(0) int w - w(0)
    SymExpr w = SymExpr::poly({0.3, 0.7}) * SymExpr::bump(0.2, 1.0);
    double tp0 = SymExpr::smooth_step().diff(1).eval(0.0);
    CHECK(mu.apply(w) == doctest::Approx(tp0 * integrate(w) - w.eval(0.0)).epsilon(1e-10));
}

TEST_CASE("mu_tilde for the constant kernel is -x") {
    Distribution mu = Distribution::kernel_one().mu_tilde();
    SymExpr w = SymExpr::poly({0.1, -0.4, 0.8}) * SymExpr::bump(-0.3, 1.2);
    double expect = integrate(SymExpr::poly({0.0, -1.0}) * w);
    CHECK(mu.apply(w) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("resolvent family reduces to hbar m2_4 at first order") {
    DeformRing c4 = DeformRing::hbar(K, N);
    auto fam = make_resolvent_family(c4);
    auto m4 = make_form(FormId::m2_4);
    GenConfig cfg;
    Rng rng(53);
    SuperFun f = random_de_element(rng, ElemClass::Mixed, cfg);
    SuperFun g = random_de_element(rng, ElemClass::Mixed, cfg);
    SuperFun fullv = fam->eval(f, g);
    SuperFun first = m4->eval(f, g);
    for (double x : kGrid) {
        auto vf = fullv.eval(x);
        auto v1 = first.eval(x);
        CHECK(vf.xi.coeff(1, 0) == doctest::Approx(v1.xi.coeff(0, 0)).epsilon(1e-12));
        CHECK(vf.body.coeff(1, 0) == doctest::Approx(v1.body.coeff(0, 0)).epsilon(1e-12));
        CHECK(vf.xi.coeff(0, 0) == 0.0);
        CHECK(vf.body.coeff(0, 0) == 0.0);
    }
    // c4 nilpotent (theta bivector): family is exactly c4 m2_4
    DeformRing c4n = DeformRing::hbar(K, N, 2) * DeformRing::theta(K, N, 1) *
                     DeformRing::theta(K, N, 2);
    auto famn = make_resolvent_family(c4n);
    SuperFun lhs = famn->eval(f, g);
    SuperFun rhs = m4->eval(f, g).ring_scaled(c4n);
    CHECK(nrm(lhs - rhs) < 1e-12);
    CHECK_THROWS_AS(make_resolvent_family(DeformRing::one(K, N)), AugmentationViolation);
}
