#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace pdsim {

// Bad inputs: malformed files, inconsistent configuration, out-of-range
// parameters. CLI exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failures of the numerics themselves (non-PSD matrix, calibration with no
// root, infeasible network reconstruction). CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename Error, typename... Parts>
[[noreturn]] void fail(Parts&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    throw Error(os.str());
}

} // namespace detail

template <typename... Parts>
void require(bool cond, Parts&&... parts) {
    if (!cond)
        detail::fail<ValidationError>(std::forward<Parts>(parts)...);
}

template <typename... Parts>
void require_numeric(bool cond, Parts&&... parts) {
    if (!cond)
        detail::fail<NumericalError>(std::forward<Parts>(parts)...);
}

// Probabilities of default are floored here after every update so that
// normal-quantile thresholds stay finite.
inline constexpr double kPdFloor = 1e-6;

} // namespace pdsim
