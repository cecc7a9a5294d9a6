#pragma once

#include <optional>
#include <vector>

#include "adef/symexpr.hpp"

namespace adef {

/// Element of D' represented as a finite comb of derivative deltas plus an
/// optional locally integrable kernel. in_E_prime() is true iff the kernel is
/// absent or compactly supported (pure delta combs always qualify).
class Distribution {
public:
    struct Delta {
        double location;
        int order;     // k in delta^{(k)}
        double weight; // w * delta^{(k)}(. - location)
    };

    Distribution() = default;

    static Distribution delta(double location, int order = 0, double weight = 1.0);
    /// Constant kernel rho(x) = c (default the canonical rho = 1, not in E').
    static Distribution kernel_one(double c = 1.0);
    static Distribution from_kernel(SymExpr rho);

    Distribution operator+(const Distribution& o) const;
    Distribution scaled(double c) const;

    bool in_E_prime() const { return in_E_prime_; }
    bool is_zero() const;
    const std::vector<Delta>& deltas() const { return deltas_; }
    const std::optional<SymExpr>& kernel() const { return kernel_; }

    /// < M, phi > = sum w (-1)^k phi^{(k)}(a) + int rho phi.
    /// phi (or rho*phi) must carry a finite support certificate, unless an
    /// explicit hull is supplied.
    double apply(const SymExpr& phi) const;
    double apply(const SymExpr& phi, Interval hull) const;

    /// mu-tilde: x -> < M(y), theta(y - x) - theta_tilde(y) >, returned as a
    /// distribution in x (derivative deltas of M contribute delta terms; the
    /// smooth/piecewise part goes to the kernel).
    Distribution mu_tilde() const;

    nlohmann::json to_json() const;
    static Distribution from_json(const nlohmann::json& j);

    std::string describe() const;

private:
    std::vector<Delta> deltas_;
    std::optional<SymExpr> kernel_;
    bool in_E_prime_ = true;
    bool kernel_is_const_ = false;
    double kernel_const_ = 0.0;
};

} // namespace adef
