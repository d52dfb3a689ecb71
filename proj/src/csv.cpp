#include "imstrip/csv.hpp"

#include <cstdio>
#include <sstream>

#include "imstrip/errors.hpp"

namespace imstrip {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string samples_to_csv(const std::vector<Sample>& rows) {
    std::string out = "s_re,s_im,f_re,f_im\n";
    for (const Sample& r : rows) {
        out += num17(r.s_re);
        out += ',';
        out += num17(r.s_im);
        out += ',';
        out += num17(r.f.real());
        out += ',';
        out += num17(r.f.imag());
        out += '\n';
    }
    return out;
}

std::vector<Sample> samples_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("samples_from_csv: empty input");
    // tolerate trailing \r from foreign line endings
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "s_re,s_im,f_re,f_im")
        throw IoError("samples_from_csv: expected header s_re,s_im,f_re,f_im");
    std::vector<Sample> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double a, b, c, d;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4)
            throw IoError("samples_from_csv: bad row at line " + std::to_string(lineno));
        rows.push_back({a, b, cplx(c, d)});
    }
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].s_re < rows[i - 1].s_re)
            throw IoError("samples_from_csv: rows must ascend in s_re");
    return rows;
}

std::string gram_to_csv(const std::vector<std::vector<cplx>>& G) {
    std::string out = "m,n,re,im\n";
    for (size_t m = 0; m < G.size(); ++m)
        for (size_t n = 0; n < G[m].size(); ++n) {
            out += std::to_string(m);
            out += ',';
            out += std::to_string(n);
            out += ',';
            out += num17(G[m][n].real());
            out += ',';
            out += num17(G[m][n].imag());
            out += '\n';
        }
    return out;
}

} // namespace imstrip
