#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adef/errors.hpp"

namespace adef {

/// Truncated formal series in an even generator hbar (powers <= K) and n odd
/// generators theta_1..theta_n. Monomials hbar^p theta_I are keyed by
/// (p, bitmask of I); theta indices inside a mask are implicitly in increasing
/// order and products pick up the sign of the reordering. Products whose total
/// hbar power exceeds K are dropped.
class DeformRing {
public:
    using Key = std::pair<int, std::uint32_t>;

    DeformRing() : K_(0), n_(0) {}
    DeformRing(int K, int n);

    static DeformRing zero(int K, int n) { return DeformRing(K, n); }
    static DeformRing one(int K, int n) { return monomial(K, n, 0, 0, 1.0); }
    static DeformRing hbar(int K, int n, int p = 1) { return monomial(K, n, p, 0, 1.0); }
    /// theta_k, 1-based index.
    static DeformRing theta(int K, int n, int k);
    static DeformRing monomial(int K, int n, int p, std::uint32_t mask, double c);

    int truncation_order() const { return K_; }
    int num_thetas() const { return n_; }

    DeformRing operator+(const DeformRing& o) const;
    DeformRing operator-(const DeformRing& o) const;
    DeformRing operator*(const DeformRing& o) const;
    DeformRing operator-() const { return scaled(-1.0); }
    DeformRing scaled(double c) const;

    bool is_zero(double tol = 0.0) const;
    double max_abs() const;
    double coeff(int p, std::uint32_t mask) const;
    const std::map<Key, double>& coeffs() const { return c_; }

    /// Grassmann parity of the coefficient: 0/1 if every monomial has the same
    /// theta-degree parity (the zero element counts as even), nullopt if mixed.
    std::optional<int> eps1() const;

    /// True iff the constant (hbar^0, theta^0) term is the only p=0 content
    /// and it vanishes: element of the augmentation ideal.
    bool vanishes_at_hbar0() const;

    /// Keeps only monomials with hbar power == p.
    DeformRing hbar_slice(int p) const;

    /// Inverse of 1 + eps with eps in the augmentation ideal (geometric series).
    /// Throws NotUnitForm otherwise.
    DeformRing inverse_unit() const;

    /// Substitute theta_l -> sum_m A[l][m] theta'_m; the A[l][m] must be pure
    /// even series (no theta content) on the same truncation.
    DeformRing substitute_theta(const std::vector<std::vector<DeformRing>>& A) const;

    /// Sign (+1/-1) of merging two disjoint increasing index sets.
    static int reorder_sign(std::uint32_t m1, std::uint32_t m2);

    nlohmann::json to_json() const;
    static DeformRing from_json(const nlohmann::json& j, int K, int n);

    bool same_shape(const DeformRing& o) const { return K_ == o.K_ && n_ == o.n_; }

private:
    void put(int p, std::uint32_t mask, double v);
    int K_;
    int n_;
    std::map<Key, double> c_;
};

} // namespace adef
