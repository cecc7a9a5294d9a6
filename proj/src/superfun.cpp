#include "adef/superfun.hpp"

#include <array>
#include <cmath>

namespace adef {

SuperFun SuperFun::xi(SymExpr f0, int K, int n) { return pure(Sector::Xi, std::move(f0), K, n); }

SuperFun SuperFun::body(SymExpr f1, int K, int n) {
    return pure(Sector::Body, std::move(f1), K, n);
}

SuperFun SuperFun::pure(Sector s, SymExpr fn, int K, int n) {
    SuperFun f(K, n);
    f.add_term(DeformRing::one(K, n), s, std::move(fn));
    return f;
}

void SuperFun::add_term(DeformRing coeff, Sector sec, SymExpr fn) {
    if (fn.is_zero() || coeff.is_zero()) return;
    if (coeff.eps1().has_value()) {
        // merge with an existing term carrying the same coefficient
        for (auto& t : terms_) {
            if (t.sec == sec && t.coeff.coeffs() == coeff.coeffs()) {
                t.fn = t.fn + fn;
                return;
            }
        }
        terms_.push_back({std::move(coeff), sec, std::move(fn)});
        return;
    }
    // split mixed coefficients into homogeneous halves
    DeformRing even(K_, n_), odd(K_, n_);
    for (const auto& [k, v] : coeff.coeffs()) {
        int par = std::popcount(k.second) % 2;
        (par == 0 ? even : odd) = (par == 0 ? even : odd) + DeformRing::monomial(K_, n_, k.first, k.second, v);
    }
    if (!even.is_zero()) terms_.push_back({even, sec, fn});
    if (!odd.is_zero()) terms_.push_back({odd, sec, fn});
}

SuperFun SuperFun::operator+(const SuperFun& o) const {
    SuperFun r = *this;
    if (r.terms_.empty()) {
        r.K_ = o.K_;
        r.n_ = o.n_;
    }
    for (const auto& t : o.terms_) r.add_term(t.coeff, t.sec, t.fn);
    return r;
}

SuperFun SuperFun::operator-(const SuperFun& o) const { return *this + o.scaled(-1.0); }

SuperFun SuperFun::scaled(double c) const {
    SuperFun r(K_, n_);
    if (c == 0.0) return r;
    for (const auto& t : terms_) r.terms_.push_back({t.coeff.scaled(c), t.sec, t.fn});
    return r;
}

SuperFun SuperFun::ring_scaled(const DeformRing& rc) const {
    SuperFun r(K_, n_);
    for (const auto& t : terms_) {
        DeformRing c = rc * t.coeff;
        if (!c.is_zero()) r.add_term(std::move(c), t.sec, t.fn);
    }
    return r;
}

std::optional<int> SuperFun::epsilon() const {
    std::optional<int> par;
    for (const auto& t : terms_) {
        int p = (*t.coeff.eps1() + epsilon_of(t.sec)) % 2;
        if (!par)
            par = p;
        else if (*par != p)
            return std::nullopt;
    }
    return par;
}

std::array<SuperFun, 2> SuperFun::split_epsilon() const {
    std::array<SuperFun, 2> out{SuperFun(K_, n_), SuperFun(K_, n_)};
    for (const auto& t : terms_) {
        int p = (*t.coeff.eps1() + epsilon_of(t.sec)) % 2;
        out[p].terms_.push_back(t);
    }
    return out;
}

SuperFun SuperFun::product(const SuperFun& o) const {
    // (alpha p)(beta q) = (-1)^{eps1(beta) eps(p)} alpha beta (p q),
    // (xi a)(xi b) = 0, (xi a) b1 = xi(a b1), a1 (xi b) = xi(a1 b), a1 b1.
    SuperFun r(K_, n_);
    for (const auto& ta : terms_) {
        for (const auto& tb : o.terms_) {
            if (ta.sec == Sector::Xi && tb.sec == Sector::Xi) continue;
            Sector sec = (ta.sec == Sector::Xi || tb.sec == Sector::Xi) ? Sector::Xi : Sector::Body;
            int sign = ((*tb.coeff.eps1() * eps_of(ta.sec)) % 2) ? -1 : 1;
            DeformRing c = (ta.coeff * tb.coeff).scaled(sign);
            if (c.is_zero()) continue;
            SymExpr fn = ta.fn * tb.fn;
            if (fn.is_zero()) continue;
            r.add_term(std::move(c), sec, std::move(fn));
        }
    }
    return r;
}

SuperFun SuperFun::xi_integral_weight1() const {
    SuperFun r(K_, n_);
    for (const auto& t : terms_)
        if (t.sec == Sector::Xi) r.add_term(t.coeff, Sector::Body, t.fn);
    return r;
}

SuperFun SuperFun::xi_integral_weightxi() const {
    SuperFun r(K_, n_);
    for (const auto& t : terms_)
        if (t.sec == Sector::Body) r.add_term(t.coeff, Sector::Body, t.fn);
    return r;
}

SuperFun::Value SuperFun::eval(double x) const {
    Value v{DeformRing::zero(K_, n_), DeformRing::zero(K_, n_)};
    for (const auto& t : terms_) {
        double fx = t.fn.eval(x);
        if (fx == 0.0) continue;
        DeformRing c = t.coeff.scaled(fx);
        if (t.sec == Sector::Xi)
            v.xi = v.xi + c;
        else
            v.body = v.body + c;
    }
    return v;
}

double SuperFun::max_abs_on_grid(std::span<const double> grid) const {
    double m = 0.0;
    for (double x : grid) {
        Value v = eval(x);
        m = std::max(m, std::max(v.xi.max_abs(), v.body.max_abs()));
    }
    return m;
}

bool SuperFun::xi_parts_compact() const {
    for (const auto& t : terms_) {
        if (t.sec != Sector::Xi) continue;
        auto s = t.fn.support();
        if (!s || !s->finite()) return false;
    }
    return true;
}

nlohmann::json SuperFun::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms_) {
        arr.push_back({{"coeff", t.coeff.to_json()},
                       {"sector", t.sec == Sector::Xi ? "xi" : "body"},
                       {"fn", t.fn.to_json()}});
    }
    return arr;
}

SuperFun SuperFun::from_json(const nlohmann::json& j, int K, int n) {
    SuperFun f(K, n);
    for (const auto& e : j) {
        Sector s = e.at("sector").get<std::string>() == "xi" ? Sector::Xi : Sector::Body;
        f.add_term(DeformRing::from_json(e.at("coeff"), K, n), s, SymExpr::from_json(e.at("fn")));
    }
    return f;
}

} // namespace adef
