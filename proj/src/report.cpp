#include "adef/report.hpp"

#include <sstream>

#include "adef/errors.hpp"

namespace adef {

RunConfig::RunConfig() : grid(default_grid()) {}

void RunConfig::validate() const {
    if (K < 1 || n < 0) throw ConfigError("config: K >= 1 and n >= 0 required");
    if (!(tol > 0.0) || !(nu > 0.0)) throw ConfigError("config: tolerances must be positive");
    if (!(nu > tol)) throw ConfigError("config: nu must exceed tol");
    if (grid.empty()) throw ConfigError("config: empty evaluation grid");
}

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 12; ++i) g.push_back(-3.0 + 0.5 * i);
    return g;
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    int npass = 0;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
        if (c.pass) ++npass;
    }
    return {{"title", title},
            {"checks", arr},
            {"summary",
             {{"pass", npass}, {"fail", static_cast<int>(checks.size()) - npass}}}};
}

std::string Report::to_markdown() const {
    std::ostringstream os;
    os << "## " << title << "\n\n";
    os << "| check | status | residual | tolerance |\n";
    os << "|---|---|---|---|\n";
    for (const auto& c : checks) {
        os << "| " << c.name << " | " << (c.pass ? "PASS" : "FAIL") << " | " << c.residual
           << " | " << c.tolerance << " |\n";
    }
    return os.str();
}

bool TableReport::all_pass() const {
    for (const auto& c : cells)
        if (!c.pass) return false;
    return sum_identity.pass;
}

nlohmann::json TableReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : cells)
        arr.push_back({{"i", c.i},
                       {"j", c.j},
                       {"expected", c.expected},
                       {"got", c.got},
                       {"pass", c.pass},
                       {"value", c.value},
                       {"detail", c.detail}});
    return {{"cells", arr},
            {"sum_identity",
             {{"name", sum_identity.name},
              {"pass", sum_identity.pass},
              {"residual", sum_identity.residual},
              {"tolerance", sum_identity.tolerance}}},
            {"all_pass", all_pass()}};
}

std::string TableReport::to_markdown() const {
    // Mirror the two verdict grids: a cell prints 0, *, X, or the relation name.
    auto find = [&](int i, int j) -> const TableCell* {
        for (const auto& c : cells)
            if (c.i == i && c.j == j) return &c;
        return nullptr;
    };
    std::ostringstream os;
    auto emit_grid = [&](int ilo, int ihi, int jhi) {
        os << "| i\\j |";
        for (int j = 1; j <= jhi; ++j) os << " " << j << " |";
        os << "\n|---|";
        for (int j = 1; j <= jhi; ++j) os << "---|";
        os << "\n";
        for (int i = ilo; i <= ihi; ++i) {
            os << "| " << i << " |";
            for (int j = 1; j <= jhi; ++j) {
                const TableCell* c = find(i, j);
                if (!c) {
                    os << " |";
                    continue;
                }
                std::string mark = c->expected;
                if (mark != "0" && mark != "*" && mark != "X" && mark != "a")
                    mark = "J(m2_0," + mark + ")";
                if (!c->pass) mark += " !";
                os << " " << mark << " |";
            }
            os << "\n";
        }
    };
    os << "### pair Jacobiators (1..7)\n\n";
    emit_grid(1, 7, 7);
    os << "\n### rows 8..10\n\n";
    emit_grid(8, 10, 10);
    os << "\n### row 11\n\n";
    emit_grid(11, 11, 11);
    os << "\nsum identity J(m8,m2)+J(m9,m7)+J(m10,m6) = 0: "
       << (sum_identity.pass ? "PASS" : "FAIL") << " (residual " << sum_identity.residual
       << ")\n";
    return os.str();
}

} // namespace adef
