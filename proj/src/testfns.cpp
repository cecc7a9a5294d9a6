#include "adef/testfns.hpp"

#include <algorithm>
#include <cmath>

#include "adef/errors.hpp"

namespace adef {

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

namespace {

SymExpr random_poly(Rng& rng, int max_degree) {
    int deg = rng.uniform_int(1, max_degree);
    std::vector<double> c(static_cast<size_t>(deg) + 1);
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    return SymExpr::poly(std::move(c));
}

SymExpr random_compact(Rng& rng, const GenConfig& cfg) {
    double radius = rng.uniform(0.6, 1.2);
    double cmax = cfg.support_radius - radius;
    double center = rng.uniform(-cmax, cmax);
    return random_poly(rng, cfg.max_degree) * SymExpr::bump(center, radius);
}

} // namespace

SuperFun random_de_element(Rng& rng, ElemClass cls, const GenConfig& cfg) {
    SuperFun out(cfg.K, cfg.n);
    if (cls != ElemClass::Even) out = out + SuperFun::xi(random_compact(rng, cfg), cfg.K, cfg.n);
    if (cls != ElemClass::Odd) {
        SymExpr b = random_poly(rng, cfg.max_degree);
        if (rng.next() % 2 == 0) b = b * SymExpr::bump(rng.uniform(-0.5, 0.5), 1.5);
        out = out + SuperFun::body(b, cfg.K, cfg.n);
    }
    return out;
}

std::vector<Triple> seeded_triples(std::uint64_t seed, int count, const GenConfig& cfg) {
    Rng rng(seed);
    std::vector<Triple> out;
    out.reserve(static_cast<size_t>(count));
    const ElemClass classes[] = {ElemClass::Odd, ElemClass::Even, ElemClass::Mixed};
    for (int i = 0; i < count; ++i) {
        Triple t;
        t.f = random_de_element(rng, classes[rng.uniform_int(0, 2)], cfg);
        t.g = random_de_element(rng, classes[rng.uniform_int(0, 2)], cfg);
        t.h = random_de_element(rng, classes[rng.uniform_int(0, 2)], cfg);
        t.tag = "seeded:" + std::to_string(i);
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

SymExpr wbump1() { return SymExpr::poly({0.7, 0.45, -0.3}) * SymExpr::bump(0.0, 1.0); }
SymExpr wbump2() { return SymExpr::poly({0.5, -0.6, 0.2, 0.1}) * SymExpr::bump(0.25, 0.95); }
SymExpr wbump3() { return SymExpr::poly({0.8, 0.3, -0.25}) * SymExpr::bump(-0.2, 1.05); }
SymExpr bodyp1() { return SymExpr::poly({0.3, 1.0, -0.15, 0.05}); }
SymExpr bodyp2() { return SymExpr::poly({-0.2, 0.7, 0.4}); }
SymExpr bodyp3() { return SymExpr::poly({0.5, -0.3, 0.2, -0.1}); }

} // namespace

Triple witness_triple(const std::string& tag, int K, int n) {
    auto Xi = [&](const SymExpr& e) { return SuperFun::xi(e, K, n); };
    auto Bd = [&](const SymExpr& e) { return SuperFun::body(e, K, n); };
    Triple t;
    t.tag = tag;
    if (tag == "J_1_3" || tag == "J_2_3") {
        t.f = Xi(wbump1());
        t.g = Xi(wbump2());
        t.h = Bd(bodyp1());
    } else if (tag == "J_1_4" || tag == "xi_triple") {
        t.f = Xi(wbump1());
        t.g = Xi(wbump2());
        t.h = Xi(wbump3());
    } else if (tag == "J_2_4" || tag == "disjoint") {
        // supports of f,g left of the grid center, h far right: local terms die
        // on supp h while the cumulative kernels saturate there
        t.f = Xi(SymExpr::poly({1.0, 0.4}) * SymExpr::bump(-1.5, 0.45));
        t.g = Xi(SymExpr::poly({0.6, -0.5}) * SymExpr::bump(-1.5, 0.5));
        t.h = Xi(SymExpr::poly({1.0, 0.2}) * SymExpr::bump(2.0, 0.45));
    } else if (tag == "J_3_4" || tag == "J_3_5" || tag == "J_3_6" || tag == "J_3_7") {
        t.f = Bd(bodyp1());
        t.g = Bd(bodyp2());
        t.h = Xi(wbump1());
    } else if (tag == "J_4_5") {
        t.f = Bd(bodyp1());
        t.g = Xi(wbump1());
        t.h = Xi(wbump2());
    } else if (tag == "J_4_6" || tag == "J_4_7") {
        t.f = Xi(wbump1());
        t.g = Xi(wbump2());
        t.h = Bd(bodyp1());
    } else if (tag == "negctrl") {
        t.f = Xi(wbump1());
        t.g = Bd(bodyp1());
        t.h = Bd(bodyp2());
    } else if (tag == "plateau") {
        // xi part equal to y on a neighborhood (plateau shape), body generic
        SymExpr plat = SymExpr::smooth_step(-1.2, 0.3) * (SymExpr::constant(1.0) -
                                                          SymExpr::smooth_step(1.2, 0.3));
        t.f = Xi(SymExpr::x() * SymExpr::restrict_to(plat, Interval{-1.6, 1.6}));
        t.g = Xi(wbump2());
        t.h = Bd(bodyp3());
    } else {
        throw ConfigError("unknown witness tag: " + tag);
    }
    return t;
}

std::vector<std::string> witness_tags() {
    return {"J_1_3", "J_1_4", "J_2_3", "J_2_4", "J_3_4", "J_3_5", "J_3_6",
            "J_3_7", "J_4_5", "J_4_6", "J_4_7", "negctrl", "disjoint", "plateau",
            "xi_triple"};
}

TestSet TestSet::make(std::uint64_t seed, int count, const GenConfig& cfg) {
    TestSet ts;
    ts.cfg = cfg;
    ts.triples = seeded_triples(seed, count, cfg);
    for (const auto& tag : witness_tags()) ts.witnesses[tag] = witness_triple(tag, cfg.K, cfg.n);
    return ts;
}

const Triple& TestSet::witness(const std::string& tag) const {
    auto it = witnesses.find(tag);
    if (it == witnesses.end()) throw ConfigError("missing witness: " + tag);
    return it->second;
}

double sup_norm(const SuperFun& v, const std::vector<double>& grid) {
    return v.max_abs_on_grid(std::span<const double>(grid.data(), grid.size()));
}

double triple_scale(const Triple& t, const std::vector<double>& grid) {
    double m = 1.0;
    m = std::max(m, sup_norm(t.f, grid));
    m = std::max(m, sup_norm(t.g, grid));
    m = std::max(m, sup_norm(t.h, grid));
    return m;
}

} // namespace adef
