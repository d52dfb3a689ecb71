#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imstrip/csv.hpp"
#include "imstrip/extensions.hpp"
#include "imstrip/polynomials.hpp"
#include "imstrip/transforms.hpp"
#include "imstrip/verify.hpp"

namespace {

using namespace imstrip;
constexpr double kPi = std::numbers::pi;

cplx parse_complex(const std::string& text) {
    // accepted: "1.5", "1.5,0.3", "1.5+0.3i", "1.5-0.3i", "0.3i"
    double re = 0, im = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) == 2) return {re, im};
    if (std::sscanf(text.c_str(), "%lf%lf%c", &re, &im, &tail) == 3 && (tail == 'i' || tail == 'j'))
        return {re, im};
    if (std::sscanf(text.c_str(), "%lf%c", &re, &tail) == 2 && (tail == 'i' || tail == 'j'))
        return {0, re};
    if (std::sscanf(text.c_str(), "%lf", &re) == 1) return {re, 0};
    throw ParameterError("cannot parse complex value: " + text);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a, b, step;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0)
            throw ParameterError("bad grid spec (want start:stop:step): " + text);
        for (double v = a; v <= b + 1e-12 * std::max(1.0, std::abs(b)); v += step)
            out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw ParameterError("empty grid");
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + path);
    f << content;
}

// Monotone cubic (Fritsch-Carlson) interpolant for sampled CSV inputs; zero
// outside the sampled support.
struct Pchip {
    std::vector<double> x, y, d;
    static Pchip build(const std::vector<double>& xs, const std::vector<double>& ys) {
        Pchip p;
        p.x = xs;
        p.y = ys;
        size_t n = xs.size();
        p.d.assign(n, 0.0);
        if (n < 2) return p;
        std::vector<double> h(n - 1), m(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = xs[i + 1] - xs[i];
            m[i] = (ys[i + 1] - ys[i]) / h[i];
        }
        p.d[0] = m[0];
        p.d[n - 1] = m[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) {
            if (m[i - 1] * m[i] <= 0)
                p.d[i] = 0;
            else {
                double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
                p.d[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
            }
        }
        return p;
    }
    double eval(double t) const {
        if (x.size() < 2 || t < x.front() || t > x.back()) return 0.0;
        size_t i = std::upper_bound(x.begin(), x.end(), t) - x.begin();
        if (i == 0) i = 1;
        if (i >= x.size()) i = x.size() - 1;
        size_t k = i - 1;
        double h = x[k + 1] - x[k], u = (t - x[k]) / h;
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
        return h00 * y[k] + h * h10 * d[k] + h01 * y[k + 1] + h * h11 * d[k + 1];
    }
};

HalfLineFunction half_line_from_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open input file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto rows = samples_from_csv(ss.str());
    std::vector<double> xs, yre, yim;
    for (auto& r : rows) {
        if (r.s_re <= 0) continue;
        xs.push_back(r.s_re);
        yre.push_back(r.f.real());
        yim.push_back(r.f.imag());
    }
    if (xs.size() < 4) throw IoError("need at least 4 positive-abscissa samples: " + path);
    auto pre = std::make_shared<Pchip>(Pchip::build(xs, yre));
    auto pim = std::make_shared<Pchip>(Pchip::build(xs, yim));
    HalfLineFunction g;
    g.eval = [pre, pim](double x) { return cplx(pre->eval(x), pim->eval(x)); };
    g.exp_rate_zero = 1.0; // compact support after interpolation
    g.exp_rate_inf = 1.0;
    return g;
}

struct CommonOpts {
    std::string output;
    std::string config;
};

int cmd_eval(const std::string& fn, const std::vector<std::string>& at_raw,
             std::map<std::string, std::string>& par, const CommonOpts& common) {
    std::vector<cplx> at;
    for (auto& a : at_raw) at.push_back(parse_complex(a));
    auto need = [&](const char* key) -> cplx {
        auto it = par.find(key);
        if (it == par.end() || it->second.empty())
            throw ParameterError(std::string("missing --") + key + " for --fn " + fn);
        return parse_complex(it->second);
    };
    auto have = [&](const char* key) { return par.count(key) && !par[key].empty(); };

    std::string out = "at_re,at_im,re,im,status\n";
    for (cplx z : at) {
        cplx v;
        std::string status = "OK";
        try {
            if (fn == "gamma") {
                v = gamma(z);
            } else if (fn == "2F1") {
                v = hyp2F1(need("a"), need("b"), need("c"), z);
            } else if (fn == "K") {
                v = macdonald_K(need("nu"), z.real());
            } else if (fn == "W") {
                v = whittaker_W(need("rho").real(), need("sigma"), z.real());
            } else if (fn == "delta") {
                ExtensionParams p(need("tau").real(), need("sigma").real(), need("phi").real());
                double shift = have("shift") ? need("shift").real() : 0.0;
                v = delta_eval(p, shift, z.real());
            } else if (fn == "polynomial") {
                std::string family = par["family"];
                int n = int(need("n").real());
                PolynomialFamily fam = [&] {
                    if (family == "mp")
                        return PolynomialFamily::meixner_pollaczek(need("a").real(),
                                                                   need("phi").real());
                    if (family == "hahn")
                        return PolynomialFamily::continuous_hahn(need("a"), need("b"));
                    if (family == "dual_hahn")
                        return PolynomialFamily::continuous_dual_hahn(need("a"), need("b"),
                                                                      need("c"));
                    if (family == "wilson")
                        return PolynomialFamily::wilson(need("a"), need("b"), need("c"),
                                                        need("d"));
                    throw ParameterError("unknown --family: " + family);
                }();
                v = poly_eval(fam, n, z);
            } else {
                throw CLI::ValidationError("--fn must be one of gamma, 2F1, K, W, delta, polynomial");
            }
        } catch (const Error& e) {
            status = "ERR";
            v = cplx(0, 0);
        }
        out += num17(z.real()) + "," + num17(z.imag()) + "," + num17(v.real()) + "," +
               num17(v.imag()) + "," + status + "\n";
    }
    write_output(common.output, out);
    return 0;
}

int cmd_transform(const std::string& name, const std::string& direction,
                  const std::string& battery, int battery_index, const std::string& input,
                  const std::string& grid_spec, int component,
                  std::map<std::string, std::string>& par, const CommonOpts& common) {
    QuadratureConfig cfg(1e-11, 1e-11, 10);
    std::vector<double> grid = parse_grid(grid_spec);
    auto getd = [&](const char* key, double dflt) {
        auto it = par.find(key);
        return (it == par.end() || it->second.empty()) ? dflt : std::stod(it->second);
    };

    HalfLineFunction hg;
    StripFunction lg;
    RealLineFunction rg;
    bool use_csv = !input.empty();
    if (use_csv) {
        hg = half_line_from_csv(input);
        lg.eval = [hg](cplx s) { return hg.eval(s.real()); };
        lg.half_width = 0;
        lg.decay = DecayClass::super_exponential();
        rg.eval = [hg](double x) { return x > 0 ? hg.eval(x) : cplx(0.0); };
    } else {
        std::string bat = battery;
        if (bat.empty())
            bat = (name == "vilenkin") ? "line_default"
                  : (name == "double_mellin") ? "real_line_default"
                                              : "half_line_default";
        if (bat == "half_line_default") {
            auto& v = battery_half_line_default();
            hg = v.at(size_t(battery_index)).second;
        } else if (bat == "line_default") {
            auto& v = battery_line_default();
            lg = v.at(size_t(battery_index)).second;
        } else if (bat == "real_line_default") {
            auto& v = battery_real_line_default();
            rg = v.at(size_t(battery_index)).second;
        } else {
            throw ParameterError("unknown battery id: " + bat);
        }
    }

    std::vector<Sample> rows;
    bool forward = direction == "forward";
    bool roundtrip = direction == "inverse" || direction == "roundtrip";
    if (!forward && !roundtrip) throw ParameterError("--direction must be forward or inverse");

    double gmax = 8.0;
    for (double s : grid) gmax = std::max(gmax, std::abs(s) + 3);

    // build the transform once; per-row evaluation below
    std::function<cplx(double)> sample;
    if (name == "mellin") {
        StripFunction M = mellin_forward(hg, cfg);
        if (forward)
            sample = [M](double s) { return M.eval(cplx(s, 0.0)); };
        else
            sample = mellin_inverse(M, cfg);
    } else if (name == "kl") {
        StripFunction K = kl_forward(hg, cfg, gmax);
        if (forward)
            sample = [K](double s) { return K.eval(cplx(s, 0.0)); };
        else
            sample = kl_inverse(K, cfg);
    } else if (name == "wimp") {
        double rho = getd("rho", 0.2);
        StripFunction W = wimp_forward(rho, hg, cfg, gmax);
        if (forward)
            sample = [W](double s) { return W.eval(cplx(s, 0.0)); };
        else
            sample = wimp_inverse(rho, W, cfg);
    } else if (name == "vilenkin") {
        double alpha = getd("alpha", 1.0), phi = getd("phi", 0.8);
        StripFunction V = vilenkin_forward(alpha, phi, lg, cfg);
        if (forward)
            sample = [V](double s) { return V.eval(cplx(s, 0.0)); };
        else {
            StripFunction Vi = vilenkin_inverse(alpha, phi, V, cfg);
            sample = [Vi](double s) { return Vi.eval(cplx(s, 0.0)); };
        }
    } else if (name == "double_mellin") {
        DoubleMellinImage im = double_mellin_forward(rg, cfg);
        if (forward) {
            StripFunction gsel = component == 2 ? im.g2 : im.g1;
            sample = [gsel](double s) { return gsel.eval(cplx(s, 0.0)); };
        } else {
            sample = double_mellin_inverse(im.g1, im.g2, cfg);
        }
    } else {
        throw ParameterError("unknown transform: " + name);
    }

    for (double s : grid) {
        try {
            rows.push_back({s, 0.0, sample(s)});
        } catch (const Error&) {
            rows.push_back({s, std::nan(""), cplx(0, 0)});
        }
    }
    // NaN s_im marks a per-row failure
    std::string out = "s_re,s_im,f_re,f_im\n";
    for (auto& r : rows)
        out += num17(r.s_re) + "," + (std::isnan(r.s_im) ? std::string("ERR") : num17(r.s_im)) +
               "," + num17(r.f.real()) + "," + num17(r.f.imag()) + "\n";
    write_output(common.output, out);
    return 0;
}

int cmd_table(const std::string& what, std::map<std::string, std::string>& par, int N,
              const CommonOpts& common) {
    auto need = [&](const char* key) -> cplx {
        auto it = par.find(key);
        if (it == par.end() || it->second.empty())
            throw ParameterError(std::string("missing --") + key);
        return parse_complex(it->second);
    };
    std::string family = par["family"];
    PolynomialFamily fam = [&] {
        if (family == "mp")
            return PolynomialFamily::meixner_pollaczek(need("a").real(), need("phi").real());
        if (family == "hahn") return PolynomialFamily::continuous_hahn(need("a"), need("b"));
        if (family == "dual_hahn")
            return PolynomialFamily::continuous_dual_hahn(need("a"), need("b"), need("c"));
        if (family == "wilson")
            return PolynomialFamily::wilson(need("a"), need("b"), need("c"), need("d"));
        throw ParameterError("unknown --family: " + family);
    }();
    if (what == "gram") {
        auto G = gram_matrix(fam, N, QuadratureConfig(1e-12, 1e-12, 11, 45.0));
        write_output(common.output, gram_to_csv(G));
        return 0;
    }
    if (what == "eigen") {
        std::string out = "n,lambda_re,lambda_im,defect\n";
        auto samples = default_eigen_samples(fam);
        for (int n = 0; n < N; ++n) {
            cplx lam = fam.eigenvalue(n);
            double d = eigen_defect(fam, n, samples);
            out += std::to_string(n) + "," + num17(lam.real()) + "," + num17(lam.imag()) + "," +
                   num17(d) + "\n";
        }
        write_output(common.output, out);
        return 0;
    }
    throw ParameterError("--what must be gram or eigen");
}

void load_config(const std::string& path, VerifyOptions& opt, std::string& format) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.rfind("tol.", 0) == 0)
            opt.tol_override[key.substr(4)] = std::stod(val);
        else if (key == "jobs")
            opt.jobs = std::stoi(val);
        else if (key == "timings")
            opt.timings = (val == "on" || val == "true" || val == "1");
        else if (key == "budget")
            opt.enforce_budget = (val == "on" || val == "true" || val == "1");
        else if (key == "format")
            format = val;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerics for difference operators in the imaginary direction: special "
                 "functions, weighted-line quadrature, index transforms, and verification suites"};
    app.require_subcommand(1);
    CommonOpts common;

    std::map<std::string, std::string> par;
    auto add_params = [&par](CLI::App* sub) {
        for (const char* key :
             {"a", "b", "c", "d", "nu", "rho", "sigma", "tau", "phi", "alpha", "n", "shift",
              "family"})
            sub->add_option(std::string("--") + key, par[key]);
    };

    // eval
    auto* ev = app.add_subcommand("eval", "evaluate a special function on a point list");
    std::string fn;
    std::vector<std::string> at;
    ev->add_option("--fn", fn, "gamma | 2F1 | K | W | delta | polynomial")->required();
    ev->add_option("--at,--x", at, "evaluation points (repeatable; re[,im] or a+bi)")->required();
    add_params(ev);
    ev->add_option("--output,-o", common.output);

    // transform
    auto* tr = app.add_subcommand("transform", "apply a transform to a battery or CSV input");
    std::string tname, tdir = "forward", battery, input, grid = "0.25:4:0.25";
    int battery_index = 0, component = 1;
    tr->add_option("--name", tname, "mellin | kl | wimp | vilenkin | double_mellin")->required();
    tr->add_option("--direction", tdir, "forward | inverse (inverse runs forward-then-inverse)");
    tr->add_option("--battery", battery, "battery id (default per transform)");
    tr->add_option("--index", battery_index, "battery function index");
    tr->add_option("--input", input, "sampled-function CSV (s_re,s_im,f_re,f_im)");
    tr->add_option("--grid", grid, "start:stop:step or comma list");
    tr->add_option("--component", component, "double_mellin output component (1 or 2)");
    add_params(tr);
    tr->add_option("--output,-o", common.output);

    // verify
    auto* vf = app.add_subcommand("verify", "run a named verification suite");
    std::string suite = "all", format = "text", report_out;
    std::vector<std::string> tol_raw;
    VerifyOptions vopt;
    vf->add_option("--suite", suite, "specfun | symmetry | kl | wimp | vilenkin | polynomials | sec6 | all");
    vf->add_option("--tol", tol_raw, "tolerance override, e.g. AC05=1e-5 (repeatable)");
    vf->add_option("--format", format, "json | text");
    vf->add_option("--jobs", vopt.jobs, "parallel checks (0 = auto, 1 = sequential)");
    vf->add_flag("--timings", vopt.timings, "emit measured per-check ms (non-reproducible bytes)");
    bool no_budget = false;
    vf->add_flag("--no-budget", no_budget, "do not fold runtime budgets into pass flags");
    vf->add_option("--output,-o", common.output);

    // table
    auto* tb = app.add_subcommand("table", "emit Gram or eigenvalue tables");
    std::string what = "gram";
    int N = 6;
    tb->add_option("--what", what, "gram | eigen");
    tb->add_option("--N", N, "matrix size / max degree");
    add_params(tb);
    tb->add_option("--output,-o", common.output);

    app.add_option("--config", common.config, "key = value config file (flags override)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ev->parsed()) return cmd_eval(fn, at, par, common);
        if (tr->parsed())
            return cmd_transform(tname, tdir, battery, battery_index, input, grid, component, par,
                                 common);
        if (tb->parsed()) return cmd_table(what, par, N, common);
        if (vf->parsed()) {
            if (!common.config.empty()) load_config(common.config, vopt, format);
            for (auto& t : tol_raw) {
                auto eq = t.find('=');
                if (eq == std::string::npos) throw ParameterError("bad --tol (want ID=value): " + t);
                vopt.tol_override[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
            }
            if (no_budget) vopt.enforce_budget = false;
            if (!is_suite(suite)) {
                std::cerr << "unknown suite: " << suite << "\n";
                return 2;
            }
            SuiteReport rep = run_suite(suite, vopt);
            write_output(common.output,
                         format == "json" ? report_to_json(rep) : report_to_text(rep));
            return rep.pass ? 0 : 1;
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
