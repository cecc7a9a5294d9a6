#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "adef/report.hpp"
#include "adef/superfun.hpp"

namespace adef {

/// Deterministic generator state (splitmix64); identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);

private:
    std::uint64_t state_;
};

enum class ElemClass { Even, Odd, Mixed };

struct Triple {
    SuperFun f, g, h;
    std::string tag;
};

struct GenConfig {
    int K = 4;
    int n = 3;
    int max_degree = 4;
    double support_radius = 2.0;
};

/// xi (poly x bump) + poly body (optionally bump-damped); Odd -> xi part only,
/// Even -> body only. Deterministic in the generator state.
SuperFun random_de_element(Rng& rng, ElemClass cls, const GenConfig& cfg);

std::vector<Triple> seeded_triples(std::uint64_t seed, int count, const GenConfig& cfg);

struct TestSet {
    std::vector<Triple> triples;
    std::map<std::string, Triple> witnesses;
    GenConfig cfg;

    static TestSet make(std::uint64_t seed, int count, const GenConfig& cfg = {});
    const Triple& witness(const std::string& tag) const;
};

/// Curated witness triples for the nonzero Jacobiator cells and the special
/// support geometries (disjoint supports, plateau shapes).
Triple witness_triple(const std::string& tag, int K, int n);
std::vector<std::string> witness_tags();

/// sup over grid and components of |f|, floored at 1 (residual normalizer).
double triple_scale(const Triple& t, const std::vector<double>& grid);
double sup_norm(const SuperFun& v, const std::vector<double>& grid);

} // namespace adef
