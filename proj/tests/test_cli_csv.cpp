#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "imstrip/csv.hpp"
#include "imstrip/errors.hpp"
#include "imstrip/verify.hpp"

using namespace imstrip;

TEST_SUITE_BEGIN("cli_csv");

TEST_CASE("num17 round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.718281828459045, -1e-17, 6.02214076e23}) {
        CHECK(std::stod(num17(v)) == v);
    }
}

TEST_CASE("sampled-function csv round trip") {
    std::vector<Sample> rows = {{-1.0, 0.0, {0.25, -0.5}}, {0.5, 0.0, {1.0 / 3.0, 0.0}},
                                {2.0, 1.0, {-7.0, 2e-18}}};
    std::string text = samples_to_csv(rows);
    auto back = samples_from_csv(text);
    REQUIRE(back.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].s_re == rows[i].s_re);
        CHECK(back[i].f == rows[i].f);
    }
    CHECK(samples_to_csv(back) == text);
}

TEST_CASE("csv validation") {
    CHECK_THROWS_AS((void)samples_from_csv(""), IoError);
    CHECK_THROWS_AS((void)samples_from_csv("x,y\n1,2\n"), IoError);
    CHECK_THROWS_AS((void)samples_from_csv("s_re,s_im,f_re,f_im\n2,0,1,0\n1,0,1,0\n"), IoError);
    CHECK_THROWS_AS((void)samples_from_csv("s_re,s_im,f_re,f_im\n2,0,nope\n"), IoError);
}

TEST_CASE("gram csv shape") {
    std::vector<std::vector<cplx>> G = {{cplx(1.0), cplx(0.0, 1.0)}, {cplx(0.0, -1.0), cplx(2.0)}};
    std::string text = gram_to_csv(G);
    CHECK(text.rfind("m,n,re,im\n", 0) == 0);
    CHECK(text.find("1,0,-0,-1\n") == std::string::npos); // no negative-zero artifacts expected
}

TEST_CASE("suite report json round trip is lossless") {
    SuiteReport r;
    r.suite = "demo";
    r.pass = false;
    r.checks.push_back({"AC99", "made-up anchor", 1.0 / 3.0, 1e-8, false, 0.0, "note text"});
    r.checks.push_back({"AC98", "another", 2e-16, 1e-12, true, 0.0, ""});
    std::string j = report_to_json(r);
    SuiteReport back = report_from_json(j);
    CHECK(report_to_json(back) == j);
    CHECK(back.checks.size() == 2);
    CHECK(back.checks[0].defect == 1.0 / 3.0);
}

TEST_CASE("suite names and unknown suites") {
    CHECK(is_suite("all"));
    CHECK(is_suite("specfun"));
    CHECK_FALSE(is_suite("nope"));
    CHECK_THROWS_AS((void)run_suite("nope"), ParameterError);
}

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("IMSTRIP_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "IMSTRIP_CLI must point at the CLI binary");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    int code = (status >= 256) ? status / 256 : status; // WEXITSTATUS without <sys/wait.h>
    return {code, out};
}

} // namespace

TEST_CASE("cli eval") {
    auto r = run_cli("eval --fn gamma --at 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1,0,1,") != std::string::npos);

    auto p = run_cli("eval --fn polynomial --family mp --a 1 --phi 1.5707963267948966 --n 1 --at 1");
    CHECK(p.exit_code == 0);
    CHECK(p.out.find(",OK") != std::string::npos);
    // P1(1) = 2 at these parameters
    CHECK(p.out.find("1,0,2") != std::string::npos);

    auto k = run_cli("eval --fn K --nu 0.5 --x 2");
    CHECK(k.exit_code == 0);
    CHECK(k.out.find("0.119937771") != std::string::npos);

    auto bad = run_cli("eval --fn gamma");
    CHECK(bad.exit_code == 2);

    auto err_rows = run_cli("eval --fn gamma --at 0 --at 1");
    CHECK(err_rows.exit_code == 0);
    CHECK(err_rows.out.find("ERR") != std::string::npos);
}

TEST_CASE("cli verify determinism and exit codes") {
    auto a = run_cli("verify --suite specfun --format json --no-budget");
    auto b = run_cli("verify --suite specfun --format json --no-budget");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"pass\": true") != std::string::npos);

    auto unknown = run_cli("verify --suite bogus");
    CHECK(unknown.exit_code == 2);

    // absurdly tight override forces a verification failure (exit 1)
    auto fail = run_cli("verify --suite specfun --tol AC01=1e-30 --no-budget");
    CHECK(fail.exit_code == 1);
}

TEST_CASE("cli transform evenness and roundtrip") {
    auto f = run_cli("transform --name kl --direction forward --grid -1.3,1.3");
    CHECK(f.exit_code == 0);
    auto rows = samples_from_csv(f.out);
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(rows[0].f - rows[1].f) < 1e-10 * std::abs(rows[0].f));

    auto r = run_cli("transform --name kl --direction inverse --grid 0.3:2.1:0.3");
    CHECK(r.exit_code == 0);
    auto back = samples_from_csv(r.out);
    const auto& g = // battery function 0 on the same grid
        [](double x) { return std::exp(-x - 1.0 / x); };
    double num = 0, den = 0;
    for (auto& row : back) {
        num += std::norm(row.f - g(row.s_re));
        den += std::norm(cplx(g(row.s_re)));
    }
    CHECK(std::sqrt(num / den) < 1e-5);
}

TEST_CASE("cli io errors") {
    auto r = run_cli("transform --name kl --input /no/such/file.csv --grid 1,2");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli table") {
    auto r = run_cli("table --what eigen --family mp --a 1 --phi 1.0471975511965976 --N 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("n,lambda_re", 0) == 0);
}

TEST_SUITE_END();
