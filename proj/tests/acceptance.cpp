// Acceptance harness: runs every verification suite and prints one line per
// criterion with its measured defect, tolerance, and runtime.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "imstrip/verify.hpp"

int main(int argc, char** argv) {
    using namespace imstrip;
    VerifyOptions opt;
    opt.timings = true;
    opt.jobs = 0; // auto
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) opt.jobs = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--no-budget") == 0) opt.enforce_budget = false;
    }

    SuiteReport rep = run_suite("all", opt);
    for (const CheckResult& c : rep.checks) {
        std::printf("%-5s %-4s defect=%10.3e  tol=%7.1e  %7.1fs  %s\n", c.id.c_str(),
                    c.pass ? "PASS" : "FAIL", c.defect, c.tol, c.ms / 1000.0, c.anchor.c_str());
        if (!c.note.empty()) std::printf("      %s\n", c.note.c_str());
    }
    std::printf("%s\n", rep.pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return rep.pass ? 0 : 1;
}
