#ifndef IMSTRIP_VERIFY_HPP
#define IMSTRIP_VERIFY_HPP

#include <map>
#include <string>
#include <vector>

namespace imstrip {

struct CheckResult {
    std::string id;
    std::string anchor; // paper anchor string for the claim being certified
    double defect = 0;
    double tol = 0;
    bool pass = false;
    double ms = 0;
    std::string note; // records probe resolutions and grids
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;
};

struct VerifyOptions {
    std::map<std::string, double> tol_override; // check id -> tolerance
    int jobs = 0;                               // 0 = auto, 1 = sequential
    bool timings = false;                       // emit measured ms (breaks byte-identical output)
    bool enforce_budget = true;                 // fold runtime budgets into pass flags
};

std::vector<std::string> suite_names(); // specfun, symmetry, kl, wimp, vilenkin, polynomials, sec6, all
bool is_suite(const std::string& name);

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt = {});

std::string report_to_json(const SuiteReport& r);
SuiteReport report_from_json(const std::string& text);
std::string report_to_text(const SuiteReport& r);

} // namespace imstrip

#endif
