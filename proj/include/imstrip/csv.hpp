#ifndef IMSTRIP_CSV_HPP
#define IMSTRIP_CSV_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace imstrip {

using cplx = std::complex<double>;

// One sampled point of a strip function.
struct Sample {
    double s_re = 0, s_im = 0;
    cplx f{0.0, 0.0};
};

// Sampled-function CSV: header `s_re,s_im,f_re,f_im`, rows ascending in s_re,
// 17 significant digits.
std::string samples_to_csv(const std::vector<Sample>& rows);
std::vector<Sample> samples_from_csv(const std::string& text);

// Gram-matrix CSV: header `m,n,re,im`, row-major.
std::string gram_to_csv(const std::vector<std::vector<cplx>>& G);

// 17-significant-digit numeric formatting used by every CLI table.
std::string num17(double v);

} // namespace imstrip

#endif
