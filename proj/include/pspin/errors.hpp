#ifndef PSPIN_ERRORS_HPP
#define PSPIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pspin {

// Violated input contract (bad argument, invalid bracket, empty range).
// The CLI maps this to exit code 2.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numeric failure at runtime (overflow, non-finite integrand, step cap).
// The CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root solver gave up; carries the last bracket it was working on.
struct SolverFailure : NumericError {
    double bracket_lo;
    double bracket_hi;
    SolverFailure(const std::string& msg, double lo, double hi)
        : NumericError(msg + " [bracket " + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]"),
          bracket_lo(lo),
          bracket_hi(hi) {}
};

}  // namespace pspin

#endif
