#pragma once

#include <stdexcept>
#include <string>

namespace pam {

// Parameter triple (lambda, mu, delta) outside the admissible region.
class InvalidParams : public std::invalid_argument {
public:
    enum class Reason {
        LambdaRange,        // need 0 < lambda < 1
        MuRange,            // need mu > 0
        DeltaTooSmall,      // need delta > 1 - lambda
        DeltaTooLarge,      // need delta < d(lambda, mu)
        BijectiveBoundary,  // delta == d(lambda, mu) with lambda*mu > 1: the map is
                            // a circle bijection and none of the machinery applies
    };

    InvalidParams(Reason r, const std::string& msg)
        : std::invalid_argument(msg), reason_(r) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

// An argument lies outside the mathematical domain of the requested operation
// (e.g. rho >= r_bound, x outside [0,1), delta outside a required window).
class RangeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A series truncation could not reach the requested tolerance within max_terms.
class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mediant denominator exceeded the configured maximum.
class FareyOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// A structural check failed at the limit of double precision
// (e.g. two gaps that must be disjoint were found overlapping).
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An orbit did not visibly settle onto its candidate limit set in the
// allotted number of steps.  Says "not enough depth", not "wrong answer".
class ApproachNotObserved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pam
