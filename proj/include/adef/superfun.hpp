#pragma once

#include <optional>
#include <span>
#include <vector>

#include "adef/ring.hpp"
#include "adef/symexpr.hpp"

namespace adef {

/// Grassmann sector of a pure term: Xi is xi*f0(x) (eps=1, eps-shifted 0),
/// Body is f1(x) (eps=0, eps-shifted 1).
enum class Sector { Xi, Body };

inline int eps_of(Sector s) { return s == Sector::Xi ? 1 : 0; }
inline int epsilon_of(Sector s) { return s == Sector::Xi ? 0 : 1; }

/// Element of DE tensored with the deformation ring, stored as a list of
/// terms (ring coefficient of definite theta-parity) x (pure xi- or body
/// function). Every term is epsilon-homogeneous by construction; elements of
/// mixed epsilon-parity are simply lists with both kinds of terms.
class SuperFun {
public:
    struct Term {
        DeformRing coeff; // eps1-homogeneous
        Sector sec;
        SymExpr fn;
    };

    SuperFun() : K_(0), n_(0) {}
    SuperFun(int K, int n) : K_(K), n_(n) {}

    static SuperFun zero(int K, int n) { return SuperFun(K, n); }
    /// xi * f0
    static SuperFun xi(SymExpr f0, int K, int n);
    static SuperFun body(SymExpr f1, int K, int n);
    static SuperFun pure(Sector s, SymExpr fn, int K, int n);

    int K() const { return K_; }
    int n() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(DeformRing coeff, Sector sec, SymExpr fn);

    SuperFun operator+(const SuperFun& o) const;
    SuperFun operator-(const SuperFun& o) const;
    SuperFun operator-() const { return scaled(-1.0); }
    SuperFun scaled(double c) const;
    /// Left multiplication by a ring element (no sign: coefficient enters
    /// leftmost).
    SuperFun ring_scaled(const DeformRing& r) const;

    /// Total epsilon parity (eps1 of coeff + shifted sector parity) if every
    /// term agrees; nullopt = mixed.
    std::optional<int> epsilon() const;
    /// Split into epsilon-homogeneous parts (index = parity 0, 1).
    std::array<SuperFun, 2> split_epsilon() const;

    /// Graded associative product, xi^2 = 0, Koszul signs from the Grassmann
    /// (eps) grading of functions and coefficients.
    SuperFun product(const SuperFun& o) const;

    /// Grassmann integral over xi: weight 1 picks the xi coefficient, weight
    /// xi picks the body. Result is body-only.
    SuperFun xi_integral_weight1() const;
    SuperFun xi_integral_weightxi() const;

    struct Value {
        DeformRing xi;
        DeformRing body;
    };
    Value eval(double x) const;
    /// max over grid points and monomials of |coefficient|, both components.
    double max_abs_on_grid(std::span<const double> grid) const;

    /// DE membership: every xi-part has a compact support certificate.
    bool xi_parts_compact() const;

    nlohmann::json to_json() const;
    static SuperFun from_json(const nlohmann::json& j, int K, int n);

private:
    int K_;
    int n_;
    std::vector<Term> terms_;
};

} // namespace adef
