#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace adef {

struct RunConfig {
    int K = 4;
    int n = 3;
    double tol = 1e-8; // zero verdicts
    double nu = 1e-6;  // nonzero verdicts (nu > tol)
    std::uint64_t seed = 20240801;
    std::vector<double> grid;

    RunConfig();
    void validate() const;
};

std::vector<double> default_grid();

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Report {
    std::string title;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    nlohmann::json to_json() const;
    std::string to_markdown() const;
};

struct TableCell {
    int i = 0, j = 0;
    std::string expected; // "0", "*", "X", "a", or relation target form name
    std::string got;
    bool pass = true;
    double value = 0.0;
    std::string detail;
};

struct TableReport {
    std::vector<TableCell> cells;
    CheckResult sum_identity;
    bool all_pass() const;
    nlohmann::json to_json() const;
    std::string to_markdown() const;
};

} // namespace adef
