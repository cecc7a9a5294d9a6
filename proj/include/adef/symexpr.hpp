#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adef/errors.hpp"

namespace adef {

/// Closed interval hull; lo/hi may be +-infinity.
struct Interval {
    double lo;
    double hi;
    bool finite() const;
    bool empty() const { return lo > hi; }
};

Interval intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

/// Immutable symbolic expression in one real variable.
///
/// The node classes are exactly the ones the calculus of this project needs:
/// polynomials, the standard bump b_{a,r}(x) = exp(-r^2/(r^2-(x-a)^2)) and its
/// exact derivatives, the smooth step (integrated normalized bump), exp and
/// integer powers, sums and products, the cumulative integral x -> int_-inf^x w
/// of a compactly supported expression (Heaviside convolution), plus two
/// kernel-only nodes (sharp left step, restriction to an interval).
///
/// Expressions are values backed by shared immutable nodes; copying is cheap
/// and evaluation from several threads is safe. Differentiation is exact and
/// closed on every class except the sharp step.
class SymExpr {
public:
    SymExpr(); // structural zero

    static SymExpr constant(double c);
    static SymExpr x();
    /// c0 + c1 x + c2 x^2 + ...
    static SymExpr poly(std::vector<double> coeffs);
    /// Standard bump on (center-radius, center+radius); exact zero outside.
    static SymExpr bump(double center, double radius);
    /// theta-tilde: 0 for x<=-1, 1 for x>=1, monotone C^inf, value 1/2 at 0.
    static SymExpr smooth_step();
    /// Smooth step with transition on (center-halfwidth, center+halfwidth).
    static SymExpr smooth_step(double center, double halfwidth);
    static SymExpr exp_of(const SymExpr& u);
    static SymExpr ipow(const SymExpr& u, int n);
    /// x -> integral_{-inf}^{x} w(t) dt; w must have compact support.
    static SymExpr heaviside_convolve(const SymExpr& w);
    /// Exact zero outside I, child value inside. The caller asserts the child
    /// genuinely vanishes outside I (used to certify supports of built kernels).
    static SymExpr restrict_to(const SymExpr& e, Interval I);
    /// Sharp step theta(a - x): 1 for x < a, 0 for x > a. Kernel-only node:
    /// integrable against test functions, not differentiable.
    static SymExpr step_below(double a);

    SymExpr operator+(const SymExpr& o) const;
    SymExpr operator-(const SymExpr& o) const;
    SymExpr operator*(const SymExpr& o) const;
    SymExpr operator-() const;
    SymExpr scaled(double c) const;

    /// Exact k-th derivative (k >= 0).
    SymExpr diff(int k = 1) const;

    double eval(double x) const;

    /// Interval outside which the expression is guaranteed to vanish
    /// (conservative; may overestimate). nullopt = no such certificate.
    std::optional<Interval> support() const;
    bool is_zero() const;

    /// Interior points where smoothness or piecewise pieces change; quadrature
    /// splits panels there.
    void collect_breakpoints(std::vector<double>& out) const;

    nlohmann::json to_json() const;
    static SymExpr from_json(const nlohmann::json& j);

    /// Total integral of the standard bump b_{0,1} (lazy, cached).
    static double bump01_norm();

private:
    struct Node;
    explicit SymExpr(std::shared_ptr<const Node> n);
    std::shared_ptr<const Node> node_;
    friend double integrate(const SymExpr&);
    friend double integrate(const SymExpr&, double, double);
};

/// Adaptive Gauss-Kronrod integral of f over its support hull.
/// Throws NonIntegrable if no finite hull is known.
double integrate(const SymExpr& f);
/// Adaptive Gauss-Kronrod integral over [a, b].
double integrate(const SymExpr& f, double a, double b);
double integrate(const SymExpr& f, double a, double b, double tol);

/// Absolute tolerance used by the adaptive quadrature (default 1e-12).
double quadrature_tolerance();
void set_quadrature_tolerance(double tol);

} // namespace adef
