#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adef/cohomology.hpp"
#include "adef/distribution.hpp"
#include "adef/forms.hpp"
#include "adef/report.hpp"

namespace adef {

/// Parameters of a deformation family: six ring coefficients (c1,c2,c3 odd,
/// c4,c5,c6 even, all vanishing at hbar=0 with theta degree bounded by the
/// hbar power) and a ring-weighted distribution M (even, vanishing at hbar=0).
struct DeformParams {
    int K = 4;
    int n = 3;
    std::vector<DeformRing> c; // index 1..6 used, c[0] unused
    struct MTerm {
        DeformRing coeff;
        Distribution dist;
    };
    std::vector<MTerm> M;

    static DeformParams empty(int K, int n);

    /// Theorem-style parity and augmentation checks. A parameter set whose
    /// entries all carry one common single theta factor is also accepted (the
    /// single-odd-direction family, where all quadratics vanish).
    void validate() const;
    /// Index (1-based) of the common theta when the set is of that shape.
    std::optional<int> common_theta() const;

    nlohmann::json to_json() const;
    static DeformParams from_json(const nlohmann::json& j);
};

struct Deformation {
    Cochain2 C;
    std::string family;
};

/// Assemble the deformed bracket:
///   C = m2_0 + Mc4 + sum_{i=1,2,3,5,6} c_i m2_i + m2_7(M)
///       - c6 m2_8(M) - c2 c6 m2_9 - c2 m2_10(M) - c2 c6^2 m2_11(M).
/// `omit` removes named correction terms (for necessity experiments).
Deformation build_deformation(const DeformParams& p,
                              const std::set<std::string>& omit = {});

struct ConstraintReport {
    struct Violation {
        std::string relation;
        double magnitude;
    };
    std::vector<Violation> violations;
    std::string family;
    bool ok() const { return violations.empty(); }
    nlohmann::json to_json() const;
};

/// Product relations: c4 c_i = 0 (i != 4), c4 M = 0, c3 c_i = 0, c3 M = 0;
/// plus the family classification.
ConstraintReport check_constraints(const DeformParams& p);

struct BasisChange {
    /// theta_l = sum_m A[l][m] theta'_m, entries pure hbar series.
    std::vector<std::vector<DeformRing>> A;
    bool identity = false;
    nlohmann::json to_json() const;
};

/// Rotate the three theta generators so that c4 becomes
/// hbar^2 c(hbar) theta'_1 theta'_2; rewrites every parameter in the new
/// basis. Requires n = 3 and c4 a combination of hbar^{>=2} theta theta terms.
std::pair<DeformParams, BasisChange> normalize_c4(const DeformParams& p);

struct OrderReport {
    struct Row {
        int order;
        double residual;
        bool pass;
    };
    std::vector<Row> rows;
    bool all_pass() const;
    std::optional<int> first_fail() const;
    nlohmann::json to_json() const;
};

/// Expand the Jacobi obstruction of C in powers of hbar and report the max
/// residual of each coefficient through hbar^Kmax over the test set.
OrderReport verify_jacobi_orderwise(const Cochain2& C, int Kmax, const TestSet& tests,
                                    const RunConfig& cfg);

} // namespace adef
