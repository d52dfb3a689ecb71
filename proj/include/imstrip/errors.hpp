#ifndef IMSTRIP_ERRORS_HPP
#define IMSTRIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace imstrip {

// All numeric failures surface as typed exceptions; no routine returns NaN silently.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ParameterError : Error {
    using Error::Error;
};
struct DivergenceError : Error {
    using Error::Error;
};
struct PathError : Error {
    using Error::Error;
};
struct StripError : Error {
    using Error::Error;
};
struct ToleranceError : Error {
    using Error::Error;
};
struct WindowError : Error {
    using Error::Error;
};
struct StepError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace imstrip

#endif
