#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "adef/distribution.hpp"
#include "adef/ring.hpp"
#include "adef/superfun.hpp"

namespace adef {

/// Stable identifiers of the bilinear forms. m2_0 is the antibracket itself;
/// m2_7, m2_8, m2_10, m2_11 are parameterized by a distribution.
enum class FormId {
    m2_0, m2_1, m2_2, m2_3, m2_4, m2_5, m2_6, m2_7, m2_8, m2_9, m2_10, m2_11
};

std::string form_name(FormId id);
std::optional<FormId> form_from_name(const std::string& s);
/// Shifted parity of the form as a bilinear map.
int form_epsilon(FormId id);
bool form_needs_distribution(FormId id);

/// Bilinear form on DE extended to ring coefficients by
///   m(alpha f, g) = (-1)^{eps1(alpha) eps(m)} alpha m(f, g),
///   m(f, beta g)  = (-1)^{eps1(beta) (eps(m) + eps(f))} beta m(f, g).
class BilinearForm {
public:
    virtual ~BilinearForm() = default;
    virtual int epsilon() const = 0;
    virtual std::string name() const = 0;
    /// Value on pure uncolored sector elements.
    virtual SuperFun eval_pure(Sector sf, const SymExpr& a, Sector sg, const SymExpr& b,
                               int K, int n) const = 0;
    virtual SuperFun eval(const SuperFun& f, const SuperFun& g) const;
};

using FormPtr = std::shared_ptr<const BilinearForm>;

/// The forms m2_0 .. m2_11.
FormPtr make_form(FormId id);
FormPtr make_form(FormId id, const Distribution& M);

/// Resolvent family: (-1)^{eps(f)} {c/(1+c N_z/2) Delta f} E_z g
///                    + {E_z f} c/(1+c N_z/2) Delta g.
FormPtr make_resolvent_family(const DeformRing& c4);

/// Graded associative product packaged as a 2-form (not a cocycle; negative
/// control for the cocycle checker).
FormPtr make_product_form();

/// Antibracket [f,g] for n=1: xi-part f0' g0 - f0 g0', body f1' g0 - f0 g1'.
SuperFun antibracket(const SuperFun& f, const SuperFun& g);

enum class Op1 { Delta, Euler, Nxi, Nz };

/// First-order operators: Delta = d_x d_xi, Euler = 1 - (x d_x + xi d_xi)/2,
/// Nxi = xi d_xi, Nz = x d_x + xi d_xi.
SuperFun apply_operator(Op1 op, const SuperFun& f);
/// Resolvent(c): sum_j (-c/2)^j Nz^j f, truncated in the ring. Requires
/// c|_{hbar=0} = 0.
SuperFun apply_resolvent(const DeformRing& c, const SuperFun& f);

/// 1-cochain (linear map DE -> DE) with definite shifted parity, extended to
/// ring coefficients by M(alpha f) = (-1)^{eps1(alpha) eps(M)} alpha M(f).
class Cochain1 {
public:
    Cochain1() = default;
    Cochain1(int epsilon, std::string name,
             std::function<SuperFun(Sector, const SymExpr&, int, int)> eval_pure);

    int epsilon() const { return eps_; }
    const std::string& name() const { return name_; }
    SuperFun eval(const SuperFun& f) const;

    static Cochain1 from_operator(Op1 op);
    /// f |-> M(f1) as a constant body (the 1-cochain whose coboundary is the
    /// bracket-pairing form when M is in E').
    static Cochain1 from_distribution(const Distribution& M);
    /// f |-> xi * (f1 * w), an odd test cochain.
    static Cochain1 xi_wrap(const SymExpr& w);
    /// f |-> multiply by a fixed smooth function (even test cochain).
    static Cochain1 multiply(const SymExpr& w);

private:
    int eps_ = 0;
    std::string name_ = "zero";
    std::function<SuperFun(Sector, const SymExpr&, int, int)> fn_;
};

/// 2-cochain: linear combination of forms with ring coefficients. Components
/// are kept parity-homogeneous (coefficient parity + form parity).
class Cochain2 {
public:
    struct Comp {
        DeformRing coeff;
        FormPtr form;
    };

    Cochain2() : K_(0), n_(0) {}
    Cochain2(int K, int n) : K_(K), n_(n) {}
    static Cochain2 single(FormPtr f, int K, int n);

    void add(const DeformRing& coeff, FormPtr form);
    const std::vector<Comp>& comps() const { return comps_; }
    int K() const { return K_; }
    int n() const { return n_; }

    static int comp_epsilon(const Comp& c);
    /// Total parity if homogeneous.
    std::optional<int> epsilon() const;

    SuperFun eval(const SuperFun& f, const SuperFun& g) const;

private:
    int K_;
    int n_;
    std::vector<Comp> comps_;
};

} // namespace adef
