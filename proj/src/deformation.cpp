#include "adef/deformation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace adef {

DeformParams DeformParams::empty(int K, int n) {
    DeformParams p;
    p.K = K;
    p.n = n;
    p.c.assign(7, DeformRing::zero(K, n));
    return p;
}

std::optional<int> DeformParams::common_theta() const {
    std::uint32_t mask_all = ~0u;
    bool any = false;
    auto visit = [&](const DeformRing& r) {
        for (const auto& [k, v] : r.coeffs()) {
            any = true;
            mask_all &= k.second;
        }
    };
    for (int i = 1; i <= 6; ++i) visit(c[i]);
    for (const auto& mt : M) visit(mt.coeff);
    if (!any || mask_all == 0) return std::nullopt;
    // additionally every monomial must be exactly one theta (the common one)
    int j = std::countr_zero(mask_all) + 1;
    std::uint32_t want = 1u << (j - 1);
    auto pure = [&](const DeformRing& r) {
        for (const auto& [k, v] : r.coeffs())
            if (k.second != want) return false;
        return true;
    };
    for (int i = 1; i <= 6; ++i)
        if (!pure(c[i])) return std::nullopt;
    for (const auto& mt : M)
        if (!pure(mt.coeff)) return std::nullopt;
    return j;
}

void DeformParams::validate() const {
    if (c.size() != 7) throw ConfigError("DeformParams: need coefficients c1..c6");
    auto check_aug = [](const DeformRing& r, const std::string& nm) {
        if (!r.vanishes_at_hbar0())
            throw AugmentationViolation(nm + " must vanish at hbar = 0");
        for (const auto& [k, v] : r.coeffs())
            if (k.first < std::popcount(k.second))
                throw AugmentationViolation(nm + ": theta degree exceeds hbar power");
    };
    for (int i = 1; i <= 6; ++i) check_aug(c[i], "c" + std::to_string(i));
    for (const auto& mt : M) check_aug(mt.coeff, "M coefficient");

    if (common_theta().has_value()) return; // single-odd-direction family

    auto parity_is = [](const DeformRing& r, int want) {
        auto p = r.eps1();
        return r.is_zero() || (p.has_value() && *p == want);
    };
    for (int i : {1, 2, 3})
        if (!parity_is(c[i], 1))
            throw ParityViolation("c" + std::to_string(i) + " must be theta-odd");
    for (int i : {4, 5, 6})
        if (!parity_is(c[i], 0))
            throw ParityViolation("c" + std::to_string(i) + " must be theta-even");
    for (const auto& mt : M)
        if (!parity_is(mt.coeff, 0)) throw ParityViolation("M coefficient must be theta-even");
}

Deformation build_deformation(const DeformParams& p, const std::set<std::string>& omit) {
    p.validate();
    const int K = p.K, n = p.n;
    Cochain2 C(K, n);
    DeformRing one = DeformRing::one(K, n);
    C.add(one, make_form(FormId::m2_0));
    if (!p.c[4].is_zero()) C.add(one, make_resolvent_family(p.c[4]));
    for (int i : {1, 2, 3, 5, 6})
        if (!p.c[i].is_zero())
            C.add(p.c[i], make_form(static_cast<FormId>(i)));
    const DeformRing& c2 = p.c[2];
    const DeformRing& c6 = p.c[6];
    // The m2_8/m2_9 corrections carry the geometric factor c6/(1+c6): the
    // verdict-grid objects behind them are cocycle-shifted partners, and
    // rewriting the family in terms of the plain forms resums the shifts
    // into this series (pinned order by order against the Jacobi identity).
    DeformRing c6u = c6 * (DeformRing::one(K, n) + c6).inverse_unit();
    DeformRing c2c66 = c2 * c6 * c6;
    for (const auto& mt : p.M) {
        if (mt.coeff.is_zero() || mt.dist.is_zero()) continue;
        C.add(mt.coeff, make_form(FormId::m2_7, mt.dist));
        if (!omit.count("m2_8")) C.add((c6u * mt.coeff).scaled(-1.0), make_form(FormId::m2_8, mt.dist));
        if (!omit.count("m2_10")) C.add((c2 * mt.coeff).scaled(-1.0), make_form(FormId::m2_10, mt.dist));
        if (!omit.count("m2_11")) C.add((c2c66 * mt.coeff).scaled(-1.0), make_form(FormId::m2_11, mt.dist));
    }
    DeformRing c2c6u = c2 * c6u;
    if (!omit.count("m2_9") && !c2c6u.is_zero())
        C.add(c2c6u.scaled(-1.0), make_form(FormId::m2_9));
    Deformation d;
    d.C = std::move(C);
    d.family = check_constraints(p).family;
    return d;
}

ConstraintReport check_constraints(const DeformParams& p) {
    ConstraintReport rep;
    auto prod_violation = [&](const DeformRing& a, const DeformRing& b,
                              const std::string& nm) {
        DeformRing pr = a * b;
        if (!pr.is_zero()) rep.violations.push_back({nm, pr.max_abs()});
    };
    for (int i : {1, 2, 3, 5, 6})
        prod_violation(p.c[4], p.c[i], "c4*c" + std::to_string(i));
    for (const auto& mt : p.M) prod_violation(p.c[4], mt.coeff, "c4*M");
    for (int i : {1, 2, 4, 5, 6})
        prod_violation(p.c[3], p.c[i], "c3*c" + std::to_string(i));
    for (const auto& mt : p.M) prod_violation(p.c[3], mt.coeff, "c3*M");

    bool all_zero = true;
    for (int i = 1; i <= 6; ++i) all_zero = all_zero && p.c[i].is_zero();
    bool M_zero = true;
    for (const auto& mt : p.M) M_zero = M_zero && (mt.coeff.is_zero() || mt.dist.is_zero());

    bool others_zero = p.c[1].is_zero() && p.c[2].is_zero() && p.c[3].is_zero() &&
                       p.c[5].is_zero() && p.c[6].is_zero() && M_zero;
    bool c4_has_theta0 = false;
    for (const auto& [k, v] : p.c[4].coeffs())
        if (k.second == 0) c4_has_theta0 = true;
    bool c4_pure_theta2 = !p.c[4].is_zero();
    for (const auto& [k, v] : p.c[4].coeffs())
        if (std::popcount(k.second) != 2) c4_pure_theta2 = false;

    if (all_zero && M_zero)
        rep.family = "trivial";
    else if (others_zero && c4_has_theta0)
        rep.family = "defform1";
    else if (p.common_theta().has_value())
        rep.family = "defform3";
    else if (p.c[4].is_zero() && p.c[3].is_zero())
        rep.family = "defform2";
    else if (c4_pure_theta2 && rep.ok())
        rep.family = "defform4";
    else
        rep.family = "general";
    return rep;
}

nlohmann::json ConstraintReport::to_json() const {
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& v : violations)
        viol.push_back({{"relation", v.relation}, {"magnitude", v.magnitude}});
    return {{"violations", viol}, {"family", family}, {"ok", ok()}};
}

// ---------------------------------------------------------------------------

namespace {

/// c4 = hbar^2 (v1 theta2 theta3 + v2 theta3 theta1 + v3 theta1 theta2);
/// returns the three hbar series as rings (theta-free).
std::array<DeformRing, 3> bivector_components(const DeformRing& c4, int K, int n) {
    std::array<DeformRing, 3> v{DeformRing::zero(K, n), DeformRing::zero(K, n),
                                DeformRing::zero(K, n)};
    for (const auto& [k, val] : c4.coeffs()) {
        if (std::popcount(k.second) != 2 || k.first < 2)
            throw NotNormalizable("c4 is not an hbar^2 theta-bivector");
        int shift = k.first - 2;
        if (k.second == 0b110u) // theta2 theta3
            v[0] = v[0] + DeformRing::monomial(K, n, shift, 0, val);
        else if (k.second == 0b101u) // theta1 theta3 = -theta3 theta1
            v[1] = v[1] + DeformRing::monomial(K, n, shift, 0, -val);
        else if (k.second == 0b011u) // theta1 theta2
            v[2] = v[2] + DeformRing::monomial(K, n, shift, 0, val);
        else
            throw NotNormalizable("c4 uses thetas beyond the first three");
    }
    return v;
}

int min_order(const DeformRing& r) {
    int m = r.truncation_order() + 1;
    for (const auto& [k, v] : r.coeffs()) m = std::min(m, k.first);
    return m;
}

/// a / u for theta-free series with unit u (u(0) != 0).
DeformRing series_div(const DeformRing& a, const DeformRing& u, int K, int n) {
    double u0 = u.coeff(0, 0);
    DeformRing unit = u.scaled(1.0 / u0);
    return a.scaled(1.0 / u0) * unit.inverse_unit();
}

DeformRing shift_down(const DeformRing& r, int s, int K, int n) {
    DeformRing out(K, n);
    for (const auto& [k, v] : r.coeffs())
        out = out + DeformRing::monomial(K, n, k.first - s, k.second, v);
    return out;
}

} // namespace

nlohmann::json BasisChange::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : A) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& e : row) r.push_back(e.to_json());
        rows.push_back(r);
    }
    return {{"matrix", rows}, {"identity", identity}};
}

std::pair<DeformParams, BasisChange> normalize_c4(const DeformParams& p) {
    const int K = p.K, n = p.n;
    if (n != 3) throw NotNormalizable("normalize_c4 requires n = 3");
    BasisChange bc;
    bc.A.assign(3, std::vector<DeformRing>(3, DeformRing::zero(K, n)));
    for (int i = 0; i < 3; ++i) bc.A[i][i] = DeformRing::one(K, n);

    if (p.c[4].is_zero()) {
        bc.identity = true;
        return {p, bc};
    }
    auto v = bivector_components(p.c[4], K, n);
    // pivot: the component with the lowest-order coefficient (largest magnitude)
    int p0 = K + 1;
    for (const auto& vk : v) p0 = std::min(p0, min_order(vk));
    int pivot = -1;
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
        double mag = std::abs(v[k].coeff(p0, 0));
        if (mag > best) {
            best = mag;
            pivot = k;
        }
    }
    if (pivot == -1) throw NotNormalizable("c4 bivector has no leading coefficient");
    if (pivot == 2 && v[0].is_zero() && v[1].is_zero()) {
        bc.identity = true;
        return {p, bc};
    }

    // u = v[pivot] shifted to a unit; rows of C kill the other components,
    // the pivot row is permuted into position 3. B = C^{-1}.
    DeformRing u = shift_down(v[pivot], p0, K, n);
    std::vector<std::vector<DeformRing>> B(3, std::vector<DeformRing>(3, DeformRing::zero(K, n)));
    // E^{-1} = I + sum_{a != pivot} (v_a / v_pivot) e_a e_pivot^T
    for (int i = 0; i < 3; ++i) B[i][i] = DeformRing::one(K, n);
    for (int a = 0; a < 3; ++a) {
        if (a == pivot) continue;
        DeformRing ratio = series_div(shift_down(v[a], p0, K, n), u, K, n);
        B[a][pivot] = B[a][pivot] + ratio;
    }
    // post-compose with the transposition (pivot <-> 2): theta = E^{-1} P theta'
    if (pivot != 2)
        for (int i = 0; i < 3; ++i) std::swap(B[i][pivot], B[i][2]);

    DeformParams out = p;
    for (int i = 1; i <= 6; ++i) out.c[i] = p.c[i].substitute_theta(B);
    for (size_t d = 0; d < out.M.size(); ++d)
        out.M[d].coeff = p.M[d].coeff.substitute_theta(B);
    bc.A = B;
    bc.identity = false;

    auto vout = bivector_components(out.c[4], K, n);
    if (!vout[0].is_zero() || !vout[1].is_zero())
        throw NotNormalizable("normalization did not reach the theta1 theta2 form");
    return {out, bc};
}

// ---------------------------------------------------------------------------

bool OrderReport::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::optional<int> OrderReport::first_fail() const {
    for (const auto& r : rows)
        if (!r.pass) return r.order;
    return std::nullopt;
}

nlohmann::json OrderReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"order", r.order}, {"residual", r.residual}, {"pass", r.pass}});
    return {{"orders", arr}, {"all_pass", all_pass()}};
}

OrderReport verify_jacobi_orderwise(const Cochain2& C, int Kmax, const TestSet& tests,
                                    const RunConfig& cfg) {
    OrderReport rep;
    std::vector<double> worst(static_cast<size_t>(Kmax) + 1, 0.0);
    for (const auto& t : tests.triples) {
        SuperFun J = jacobiator_self(C, t.f, t.g, t.h);
        double scale = triple_scale(t, cfg.grid);
        for (double x : cfg.grid) {
            SuperFun::Value v = J.eval(x);
            for (int p = 0; p <= Kmax; ++p) {
                double m = std::max(v.xi.hbar_slice(p).max_abs(),
                                    v.body.hbar_slice(p).max_abs());
                worst[static_cast<size_t>(p)] =
                    std::max(worst[static_cast<size_t>(p)], m / scale);
            }
        }
    }
    for (int po = 0; po <= Kmax; ++po)
        rep.rows.push_back({po, worst[static_cast<size_t>(po)],
                            worst[static_cast<size_t>(po)] < cfg.tol});
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

DeformRing ring_from_triples(const nlohmann::json& j, int K, int n) {
    // accepts [[p, [i1,i2..], value], ...] or the object form
    DeformRing r(K, n);
    for (const auto& e : j) {
        if (e.is_array()) {
            nlohmann::json obj = {{"hbar", e.at(0)}, {"theta", e.at(1)}, {"value", e.at(2)}};
            r = r + DeformRing::from_json(nlohmann::json::array({obj}), K, n);
        } else {
            r = r + DeformRing::from_json(nlohmann::json::array({e}), K, n);
        }
    }
    return r;
}

} // namespace

nlohmann::json DeformParams::to_json() const {
    nlohmann::json j;
    j["K"] = K;
    j["n"] = n;
    for (int i = 1; i <= 6; ++i) j["c" + std::to_string(i)] = c[i].to_json();
    nlohmann::json marr = nlohmann::json::array();
    for (const auto& mt : M)
        marr.push_back({{"coeff", mt.coeff.to_json()}, {"dist", mt.dist.to_json()}});
    j["M"] = marr;
    return j;
}

DeformParams DeformParams::from_json(const nlohmann::json& j) {
    int K = j.value("K", 4);
    int n = j.value("n", 3);
    DeformParams p = DeformParams::empty(K, n);
    for (int i = 1; i <= 6; ++i) {
        std::string key = "c" + std::to_string(i);
        if (j.contains(key)) p.c[i] = ring_from_triples(j.at(key), K, n);
    }
    if (j.contains("M")) {
        for (const auto& e : j.at("M")) {
            MTerm mt{ring_from_triples(e.at("coeff"), K, n),
                     Distribution::from_json(e.at("dist"))};
            p.M.push_back(std::move(mt));
        }
    }
    return p;
}

} // namespace adef
