#include "adef/forms.hpp"

#include <cmath>

namespace adef {

namespace {

SymExpr euler_xi(const SymExpr& a) {
    // E_z on xi a: (a - x a') / 2
    return (a - SymExpr::x() * a.diff(1)).scaled(0.5);
}

SymExpr euler_body(const SymExpr& a) {
    // E_z on a body: a - x a' / 2
    return a - (SymExpr::x() * a.diff(1)).scaled(0.5);
}

// Relative sign of the mu-tilde pairing forms m2_8 / m2_11 against the listed
// integrands; fixed so that the relations J(m2_6,m2_7) = J(m2_0,m2_8) and
// J(m2_8,m2_9) = J(m2_0,m2_11) hold together with the deformation family
// (asserted by the cohomology tests, not assumed).
constexpr double kMuPairSign = -1.0;

class CocycleForm : public BilinearForm {
public:
    CocycleForm(FormId id, std::optional<Distribution> M) : id_(id), M_(std::move(M)) {
        if (form_needs_distribution(id_) && !M_)
            throw ConfigError("form " + form_name(id_) + " requires a distribution");
        if (M_ && (id_ == FormId::m2_8 || id_ == FormId::m2_11)) mu_tilde_ = M_->mu_tilde();
    }

    int epsilon() const override { return form_epsilon(id_); }

    std::string name() const override {
        std::string s = form_name(id_);
        if (M_) s += "(" + M_->describe() + ")";
        return s;
    }

    SuperFun eval_pure(Sector sf, const SymExpr& a, Sector sg, const SymExpr& b, int K,
                       int n) const override;

private:
    FormId id_;
    std::optional<Distribution> M_;
    std::optional<Distribution> mu_tilde_;
};

SuperFun CocycleForm::eval_pure(Sector sf, const SymExpr& a, Sector sg, const SymExpr& b,
                                int K, int n) const {
    const bool xx = sf == Sector::Xi && sg == Sector::Xi;
    const bool xb = sf == Sector::Xi && sg == Sector::Body;
    const bool bx = sf == Sector::Body && sg == Sector::Xi;
    const bool bb = sf == Sector::Body && sg == Sector::Body;
    SuperFun zero = SuperFun::zero(K, n);

    switch (id_) {
    case FormId::m2_0: {
        // [f,g]: (xi a, xi b) -> xi (a'b - ab'), (xi a, b) -> -a b',
        // (a, xi b) -> a' b, bodies -> 0
        if (xx) return SuperFun::xi(a.diff(1) * b - a * b.diff(1), K, n);
        if (xb) return SuperFun::body(-(a * b.diff(1)), K, n);
        if (bx) return SuperFun::body(a.diff(1) * b, K, n);
        return zero;
    }
    case FormId::m2_1: {
        // int du d_eta g d_y^3 f = int b a''' dy on the xi-xi sector
        if (!xx) return zero;
        return SuperFun::body(SymExpr::constant(integrate(b * a.diff(3))), K, n);
    }
    case FormId::m2_2: {
        // step-kernel pairing of third derivatives plus the x-weighted local
        // term; the local sign is pinned by the cocycle condition d2 m = 0
        if (!xx) return zero;
        SymExpr w = b * a.diff(3) - a * b.diff(3);
        SymExpr local = SymExpr::x() * (a.diff(1) * b.diff(2) - a.diff(2) * b.diff(1));
        return SuperFun::body(SymExpr::heaviside_convolve(w) + local, K, n);
    }
    case FormId::m2_3: {
        // (-1)^{eps(f)} (1-Nxi)f (1-Nxi)g = f1 g1
        if (!bb) return zero;
        return SuperFun::body(a * b, K, n);
    }
    case FormId::m2_4: {
        // (-1)^{eps(f)} {Delta f} E_z g + {E_z f} Delta g
        if (xx) return SuperFun::xi((a * b.diff(1) - a.diff(1) * b).scaled(0.5), K, n);
        if (xb) return SuperFun::body(-(a.diff(1) * euler_body(b)), K, n);
        if (bx) return SuperFun::body(euler_body(a) * b.diff(1), K, n);
        return zero;
    }
    case FormId::m2_5: {
        // int du (-1)^{epsilon(f)} d_y f d_y g
        if (xb) return SuperFun::body(SymExpr::constant(integrate(a.diff(1) * b.diff(1))), K, n);
        if (bx) return SuperFun::body(SymExpr::constant(-integrate(a.diff(1) * b.diff(1))), K, n);
        return zero;
    }
    case FormId::m2_6: {
        if (xb) return SuperFun::body(SymExpr::heaviside_convolve(a.diff(1) * b.diff(1)), K, n);
        if (bx) return SuperFun::body(-SymExpr::heaviside_convolve(a.diff(1) * b.diff(1)), K, n);
        return zero;
    }
    case FormId::m2_7: {
        // M applied to the body of [f,g]
        if (xb) return SuperFun::body(SymExpr::constant(M_->apply(-(a * b.diff(1)))), K, n);
        if (bx) return SuperFun::body(SymExpr::constant(M_->apply(a.diff(1) * b)), K, n);
        return zero;
    }
    case FormId::m2_8: {
        // mu-tilde weighted first-derivative pairing
        if (xb || bx) {
            double v = mu_tilde_->apply(a.diff(1) * b.diff(1));
            if (bx) v = -v;
            return SuperFun::body(SymExpr::constant(kMuPairSign * v), K, n);
        }
        return zero;
    }
    case FormId::m2_9: {
        // Delta [f,g]
        if (!xx) return zero;
        SymExpr u = a.diff(1) * b - a * b.diff(1);
        return SuperFun::body(u.diff(1), K, n);
    }
    case FormId::m2_10: {
        // M applied to the m2_2 profile, with the step-saturation removed so
        // every distribution class applies; the overall sign is pinned by the
        // relation J(m2_2, m2_7) = J(m2_0, m2_10), like the other mu-tilde
        // pairings
        if (!xx) return zero;
        SymExpr w = b * a.diff(3) - a * b.diff(3);
        double A = integrate(w);
        SymExpr local = SymExpr::x() * (a.diff(1) * b.diff(2) - a.diff(2) * b.diff(1));
        SymExpr psi = (SymExpr::heaviside_convolve(w) + local -
                       SymExpr::smooth_step().scaled(A))
                          .scaled(kMuPairSign);
        Interval h = hull(hull(*a.support(), *b.support()), Interval{-1.0, 1.0});
        double v = M_->apply(SymExpr::restrict_to(psi, h), h);
        return SuperFun::body(SymExpr::constant(v), K, n);
    }
    case FormId::m2_11: {
        if (!xx) return zero;
        double v = mu_tilde_->apply(b * a.diff(3) - a * b.diff(3));
        return SuperFun::body(SymExpr::constant(kMuPairSign * v), K, n);
    }
    }
    return zero;
}

class ResolventFamilyForm : public BilinearForm {
public:
    explicit ResolventFamilyForm(DeformRing c4) : c4_(std::move(c4)) {
        if (!c4_.vanishes_at_hbar0())
            throw AugmentationViolation("resolvent family: c4 must vanish at hbar=0");
    }

    int epsilon() const override { return 0; }
    std::string name() const override { return "Mc4"; }

    SuperFun eval_pure(Sector sf, const SymExpr& a, Sector sg, const SymExpr& b, int K,
                       int n) const override {
        SuperFun out = SuperFun::zero(K, n);
        const bool xx = sf == Sector::Xi && sg == Sector::Xi;
        const bool xb = sf == Sector::Xi && sg == Sector::Body;
        const bool bx = sf == Sector::Body && sg == Sector::Xi;
        if (sf == Sector::Body && sg == Sector::Body) return out;
        // R(w) = sum_j c4 (-c4/2)^j (x d/dx)^j w, truncated by nilpotency
        auto add_R = [&](const SymExpr& w, const std::function<void(const DeformRing&, const SymExpr&)>& sink) {
            DeformRing rho = c4_;
            SymExpr u = w;
            while (!rho.is_zero()) {
                sink(rho, u);
                rho = rho * c4_.scaled(-0.5);
                u = SymExpr::x() * u.diff(1);
            }
        };
        if (xx) {
            // -R(a') (b - x b')/2 + (a - x a')/2 R(b'), xi-valued
            add_R(a.diff(1), [&](const DeformRing& r, const SymExpr& u) {
                out.add_term(r.scaled(-1.0), Sector::Xi, u * euler_xi(b));
            });
            add_R(b.diff(1), [&](const DeformRing& r, const SymExpr& u) {
                out.add_term(r, Sector::Xi, euler_xi(a) * u);
            });
        } else if (xb) {
            add_R(a.diff(1), [&](const DeformRing& r, const SymExpr& u) {
                out.add_term(r.scaled(-1.0), Sector::Body, u * euler_body(b));
            });
        } else if (bx) {
            add_R(b.diff(1), [&](const DeformRing& r, const SymExpr& u) {
                out.add_term(r, Sector::Body, euler_body(a) * u);
            });
        }
        return out;
    }

private:
    DeformRing c4_;
};

class ProductForm : public BilinearForm {
public:
    int epsilon() const override { return 1; }
    std::string name() const override { return "graded-product"; }
    SuperFun eval_pure(Sector sf, const SymExpr& a, Sector sg, const SymExpr& b, int K,
                       int n) const override {
        if (sf == Sector::Xi && sg == Sector::Xi) return SuperFun::zero(K, n);
        if (sf == Sector::Body && sg == Sector::Body) return SuperFun::body(a * b, K, n);
        return SuperFun::xi(a * b, K, n);
    }
};

} // namespace

std::string form_name(FormId id) {
    static const char* names[] = {"m2_0", "m2_1", "m2_2",  "m2_3", "m2_4", "m2_5",
                                  "m2_6", "m2_7", "m2_8",  "m2_9", "m2_10", "m2_11"};
    return names[static_cast<int>(id)];
}

std::optional<FormId> form_from_name(const std::string& s) {
    for (int i = 0; i <= 11; ++i)
        if (form_name(static_cast<FormId>(i)) == s) return static_cast<FormId>(i);
    return std::nullopt;
}

int form_epsilon(FormId id) {
    switch (id) {
    case FormId::m2_1:
    case FormId::m2_2:
    case FormId::m2_3:
    case FormId::m2_9:
    case FormId::m2_10:
    case FormId::m2_11:
        return 1;
    default:
        return 0;
    }
}

bool form_needs_distribution(FormId id) {
    return id == FormId::m2_7 || id == FormId::m2_8 || id == FormId::m2_10 ||
           id == FormId::m2_11;
}

SuperFun BilinearForm::eval(const SuperFun& f, const SuperFun& g) const {
    int K = f.terms().empty() ? g.K() : f.K();
    int n = f.terms().empty() ? g.n() : f.n();
    SuperFun out = SuperFun::zero(K, n);
    int em = epsilon();
    for (const auto& tf : f.terms()) {
        int ea = *tf.coeff.eps1();
        for (const auto& tg : g.terms()) {
            int eb = *tg.coeff.eps1();
            DeformRing c = tf.coeff * tg.coeff;
            if (c.is_zero()) continue;
            int s = (ea * em + eb * ((em + epsilon_of(tf.sec)) % 2)) % 2;
            if (s) c = c.scaled(-1.0);
            SuperFun v = eval_pure(tf.sec, tf.fn, tg.sec, tg.fn, K, n);
            if (v.is_zero()) continue;
            out = out + v.ring_scaled(c);
        }
    }
    return out;
}

FormPtr make_form(FormId id) { return std::make_shared<CocycleForm>(id, std::nullopt); }

FormPtr make_form(FormId id, const Distribution& M) {
    return std::make_shared<CocycleForm>(id, M);
}

FormPtr make_resolvent_family(const DeformRing& c4) {
    return std::make_shared<ResolventFamilyForm>(c4);
}

FormPtr make_product_form() { return std::make_shared<ProductForm>(); }

SuperFun antibracket(const SuperFun& f, const SuperFun& g) {
    static const FormPtr bracket = make_form(FormId::m2_0);
    return bracket->eval(f, g);
}

SuperFun apply_operator(Op1 op, const SuperFun& f) {
    int K = f.K(), n = f.n();
    SuperFun out = SuperFun::zero(K, n);
    for (const auto& t : f.terms()) {
        switch (op) {
        case Op1::Delta: {
            if (t.sec == Sector::Xi) {
                // odd operator: Koszul sign past the coefficient
                DeformRing c = (*t.coeff.eps1() % 2) ? t.coeff.scaled(-1.0) : t.coeff;
                out.add_term(std::move(c), Sector::Body, t.fn.diff(1));
            }
            break;
        }
        case Op1::Euler:
            out.add_term(t.coeff, t.sec,
                         t.sec == Sector::Xi ? euler_xi(t.fn) : euler_body(t.fn));
            break;
        case Op1::Nxi:
            if (t.sec == Sector::Xi) out.add_term(t.coeff, Sector::Xi, t.fn);
            break;
        case Op1::Nz: {
            SymExpr v = SymExpr::x() * t.fn.diff(1);
            if (t.sec == Sector::Xi) v = v + t.fn;
            out.add_term(t.coeff, t.sec, v);
            break;
        }
        }
    }
    return out;
}

SuperFun apply_resolvent(const DeformRing& c, const SuperFun& f) {
    if (!c.vanishes_at_hbar0())
        throw ResolventPrecondition("resolvent: c must vanish at hbar = 0");
    SuperFun out = f;
    DeformRing pw = DeformRing::one(c.truncation_order(), c.num_thetas());
    SuperFun iter = f;
    while (true) {
        pw = pw * c.scaled(-0.5);
        if (pw.is_zero()) break;
        iter = apply_operator(Op1::Nz, iter);
        if (iter.is_zero()) break;
        out = out + iter.ring_scaled(pw);
    }
    return out;
}

// ---------------------------------------------------------------------------

Cochain1::Cochain1(int epsilon, std::string name,
                   std::function<SuperFun(Sector, const SymExpr&, int, int)> eval_pure)
    : eps_(epsilon), name_(std::move(name)), fn_(std::move(eval_pure)) {}

SuperFun Cochain1::eval(const SuperFun& f) const {
    SuperFun out = SuperFun::zero(f.K(), f.n());
    if (!fn_) return out;
    for (const auto& t : f.terms()) {
        int s = (*t.coeff.eps1() * eps_) % 2;
        SuperFun v = fn_(t.sec, t.fn, f.K(), f.n());
        if (v.is_zero()) continue;
        out = out + v.ring_scaled(s ? t.coeff.scaled(-1.0) : t.coeff);
    }
    return out;
}

Cochain1 Cochain1::from_operator(Op1 op) {
    int eps = (op == Op1::Delta) ? 1 : 0;
    const char* nm = op == Op1::Delta ? "Delta"
                     : op == Op1::Euler ? "Euler"
                     : op == Op1::Nxi   ? "Nxi"
                                        : "Nz";
    return Cochain1(eps, nm, [op](Sector s, const SymExpr& fn, int K, int n) {
        return apply_operator(op, SuperFun::pure(s, fn, K, n));
    });
}

Cochain1 Cochain1::from_distribution(const Distribution& M) {
    return Cochain1(0, "pair(" + M.describe() + ")",
                    [M](Sector s, const SymExpr& fn, int K, int n) {
                        if (s != Sector::Body) return SuperFun::zero(K, n);
                        return SuperFun::body(SymExpr::constant(M.apply(fn)), K, n);
                    });
}

Cochain1 Cochain1::xi_wrap(const SymExpr& w) {
    return Cochain1(1, "xi-wrap", [w](Sector s, const SymExpr& fn, int K, int n) {
        if (s != Sector::Body) return SuperFun::zero(K, n);
        return SuperFun::xi(w * fn, K, n);
    });
}

Cochain1 Cochain1::multiply(const SymExpr& w) {
    return Cochain1(0, "multiply", [w](Sector s, const SymExpr& fn, int K, int n) {
        return SuperFun::pure(s, w * fn, K, n);
    });
}

// ---------------------------------------------------------------------------

Cochain2 Cochain2::single(FormPtr f, int K, int n) {
    Cochain2 c(K, n);
    c.add(DeformRing::one(K, n), std::move(f));
    return c;
}

void Cochain2::add(const DeformRing& coeff, FormPtr form) {
    if (coeff.is_zero() || !form) return;
    if (coeff.eps1().has_value()) {
        comps_.push_back({coeff, std::move(form)});
        return;
    }
    DeformRing even(K_, n_), odd(K_, n_);
    for (const auto& [k, v] : coeff.coeffs()) {
        auto m = DeformRing::monomial(K_, n_, k.first, k.second, v);
        if (std::popcount(k.second) % 2 == 0)
            even = even + m;
        else
            odd = odd + m;
    }
    if (!even.is_zero()) comps_.push_back({even, form});
    if (!odd.is_zero()) comps_.push_back({odd, form});
}

int Cochain2::comp_epsilon(const Comp& c) {
    return (*c.coeff.eps1() + c.form->epsilon()) % 2;
}

std::optional<int> Cochain2::epsilon() const {
    std::optional<int> par;
    for (const auto& c : comps_) {
        int p = comp_epsilon(c);
        if (!par)
            par = p;
        else if (*par != p)
            return std::nullopt;
    }
    return par.value_or(0);
}

SuperFun Cochain2::eval(const SuperFun& f, const SuperFun& g) const {
    SuperFun out = SuperFun::zero(K_, n_);
    for (const auto& c : comps_) out = out + c.form->eval(f, g).ring_scaled(c.coeff);
    return out;
}

} // namespace adef
