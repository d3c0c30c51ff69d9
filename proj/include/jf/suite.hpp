#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jf/jacobi.hpp"

namespace jf {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    int trunc = 4;
    int ceiling = 8;
    std::string suite = "level*,negctrl.*";  // comma-separated globs
    std::string group;                       // empty = all
    std::string format = "table";            // table | json
    std::string out;                         // empty = stdout
    int jobs = 1;
};
// 1 <= trunc <= ceiling <= 16, known format, known group
void validate(const RunConfig& c);

enum class Status { Pass, Fail, Inconclusive };
std::string status_name(Status s);

struct CheckResult {
    std::string name;
    Status status = Status::Pass;
    int n = 0;
    std::optional<std::string> first_mismatch;
    std::string detail;
    double seconds = 0;
};

struct Check {
    std::string name;
    GroupId group;
    std::function<CheckResult(const RunConfig&)> run;
};

const std::vector<Check>& all_checks();
std::vector<const Check*> select_checks(const RunConfig& c);
// runs with c.jobs workers; results sorted by name
std::vector<CheckResult> run_checks(const std::vector<const Check*>& checks, const RunConfig& c);
CheckResult run_check(const Check& k, const RunConfig& c);
// 0 all pass, 1 any failure, 3 only inconclusive besides passes
int exit_code(const std::vector<CheckResult>& rs);

std::string report_json(const std::vector<CheckResult>& rs, const RunConfig& c);
std::string report_table(const std::vector<CheckResult>& rs);

// dimension table: predicted Hilbert coefficient against computed rank
struct DimsTable {
    GroupId group;
    Space space;
    std::vector<long long> full_series;  // coefficients of the full generating function
    ModuleReport report;
};
DimsTable dims_table(GroupId g, Space s, int K, const RunConfig& c);
std::string dims_json(const DimsTable& t);
std::string dims_text(const DimsTable& t);
int dims_exit_code(const DimsTable& t);

// float comparison of det(C tau + D)^-k f(M<tau>) with the structural slash of f at tau
struct SmokeItem {
    std::string generator;
    std::string form;
    std::string rep;
    cplx direct, structural;
    double rel_err = 0;
};
CMat2 smoke_point();  // diag(1.3i, 1.7i) + 0.1i S0
std::vector<SmokeItem> smoke_test(GroupId g, const CMat2& tau);
cplx slash_direct(const Expr& f, const SymplecticMat& M, const CMat2& tau);

}  // namespace jf
