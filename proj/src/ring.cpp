#include "adef/ring.hpp"

#include <bit>
#include <cmath>

namespace adef {

DeformRing::DeformRing(int K, int n) : K_(K), n_(n) {
    if (K < 0 || n < 0 || n > 30) throw ConfigError("DeformRing: bad truncation parameters");
}

DeformRing DeformRing::theta(int K, int n, int k) {
    if (k < 1 || k > n) throw ConfigError("DeformRing::theta: index out of range");
    return monomial(K, n, 0, 1u << (k - 1), 1.0);
}

DeformRing DeformRing::monomial(int K, int n, int p, std::uint32_t mask, double c) {
    DeformRing r(K, n);
    r.put(p, mask, c);
    return r;
}

void DeformRing::put(int p, std::uint32_t mask, double v) {
    if (v == 0.0 || p > K_ || p < 0) return;
    if (mask >> n_) throw ConfigError("DeformRing: theta index beyond n");
    auto [it, inserted] = c_.emplace(Key{p, mask}, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0.0) c_.erase(it);
    }
}

DeformRing DeformRing::operator+(const DeformRing& o) const {
    if (!same_shape(o)) throw TruncationMismatch("DeformRing: shape mismatch in +");
    DeformRing r = *this;
    for (const auto& [k, v] : o.c_) r.put(k.first, k.second, v);
    return r;
}

DeformRing DeformRing::operator-(const DeformRing& o) const { return *this + o.scaled(-1.0); }

int DeformRing::reorder_sign(std::uint32_t m1, std::uint32_t m2) {
    // count pairs (i in m1, j in m2) with i > j
    int inversions = 0;
    std::uint32_t rest = m2;
    while (rest) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        std::uint32_t above = m1 >> (j + 1);
        inversions += std::popcount(above);
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

DeformRing DeformRing::operator*(const DeformRing& o) const {
    if (!same_shape(o)) throw TruncationMismatch("DeformRing: shape mismatch in *");
    DeformRing r(K_, n_);
    for (const auto& [ka, va] : c_) {
        for (const auto& [kb, vb] : o.c_) {
            int p = ka.first + kb.first;
            if (p > K_) continue;
            if (ka.second & kb.second) continue; // repeated theta
            double sign = reorder_sign(ka.second, kb.second);
            r.put(p, ka.second | kb.second, sign * va * vb);
        }
    }
    return r;
}

DeformRing DeformRing::scaled(double c) const {
    DeformRing r(K_, n_);
    if (c == 0.0) return r;
    for (const auto& [k, v] : c_) r.c_[k] = v * c;
    return r;
}

bool DeformRing::is_zero(double tol) const {
    for (const auto& [k, v] : c_)
        if (std::abs(v) > tol) return false;
    return true;
}

double DeformRing::max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : c_) m = std::max(m, std::abs(v));
    return m;
}

double DeformRing::coeff(int p, std::uint32_t mask) const {
    auto it = c_.find(Key{p, mask});
    return it == c_.end() ? 0.0 : it->second;
}

std::optional<int> DeformRing::eps1() const {
    std::optional<int> par;
    for (const auto& [k, v] : c_) {
        int pk = std::popcount(k.second) % 2;
        if (!par)
            par = pk;
        else if (*par != pk)
            return std::nullopt;
    }
    return par.value_or(0);
}

bool DeformRing::vanishes_at_hbar0() const {
    for (const auto& [k, v] : c_)
        if (k.first == 0) return false;
    return true;
}

DeformRing DeformRing::hbar_slice(int p) const {
    DeformRing r(K_, n_);
    for (const auto& [k, v] : c_)
        if (k.first == p) r.c_[k] = v;
    return r;
}

DeformRing DeformRing::inverse_unit() const {
    if (coeff(0, 0) != 1.0)
        throw NotUnitForm("inverse_unit: constant term must be exactly 1");
    DeformRing eps = *this - one(K_, n_);
    if (!eps.vanishes_at_hbar0())
        throw NotUnitForm("inverse_unit: correction must vanish at hbar=0");
    DeformRing acc = one(K_, n_);
    DeformRing pw = one(K_, n_);
    for (int j = 1; j <= K_; ++j) {
        pw = pw * eps.scaled(-1.0);
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    return acc;
}

DeformRing DeformRing::substitute_theta(const std::vector<std::vector<DeformRing>>& A) const {
    if (static_cast<int>(A.size()) != n_)
        throw ConfigError("substitute_theta: matrix row count != n");
    DeformRing out(K_, n_);
    for (const auto& [key, v] : c_) {
        DeformRing term = monomial(K_, n_, key.first, 0, v);
        std::uint32_t rest = key.second;
        while (rest && !term.is_zero()) {
            int l = std::countr_zero(rest);
            rest &= rest - 1;
            // theta_{l+1} -> sum_m A[l][m] theta'_{m+1}
            DeformRing row(K_, n_);
            for (int m = 0; m < n_; ++m) {
                const DeformRing& a = A[l][m];
                if (a.is_zero()) continue;
                if (a.eps1() != std::optional<int>(0) || [&] {
                        for (const auto& [k2, v2] : a.coeffs())
                            if (k2.second != 0) return true;
                        return false;
                    }())
                    throw ConfigError("substitute_theta: matrix entries must be pure hbar series");
                row = row + a * theta(K_, n_, m + 1);
            }
            term = term * row;
        }
        out = out + term;
    }
    return out;
}

nlohmann::json DeformRing::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : c_) {
        nlohmann::json idx = nlohmann::json::array();
        std::uint32_t rest = k.second;
        while (rest) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            idx.push_back(j + 1);
        }
        arr.push_back({{"hbar", k.first}, {"theta", idx}, {"value", v}});
    }
    return arr;
}

DeformRing DeformRing::from_json(const nlohmann::json& j, int K, int n) {
    DeformRing r(K, n);
    for (const auto& e : j) {
        std::uint32_t mask = 0;
        int sign = 1;
        std::uint32_t seen = 0;
        int last = 0;
        bool sorted = true;
        std::vector<int> idxs;
        for (const auto& t : e.at("theta")) idxs.push_back(t.get<int>());
        for (int idx : idxs) {
            if (idx < 1 || idx > n) throw ConfigError("ring monomial: theta index out of range");
            std::uint32_t bit = 1u << (idx - 1);
            if (seen & bit) { sign = 0; break; } // repeated: zero monomial
            if (idx < last) sorted = false;
            last = idx;
            seen |= bit;
        }
        if (sign == 0) continue;
        if (!sorted) {
            // normalize by counting inversions
            int inv = 0;
            for (size_t a = 0; a < idxs.size(); ++a)
                for (size_t b = a + 1; b < idxs.size(); ++b)
                    if (idxs[a] > idxs[b]) ++inv;
            sign = (inv % 2 == 0) ? 1 : -1;
        }
        mask = seen;
        r.put(e.at("hbar").get<int>(), mask, sign * e.at("value").get<double>());
    }
    return r;
}

} // namespace adef
