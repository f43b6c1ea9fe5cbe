#pragma once

#include <stdexcept>
#include <string>

namespace qrabi {

// g2 >= 1/2: the effective oscillator frequency sqrt(1 - 4 g2^2) vanishes and
// the discrete spectrum collapses.  Every entry point rejects this region.
class collapse_error : public std::domain_error {
public:
    explicit collapse_error(double g2)
        : std::domain_error("two-photon coupling g2=" + std::to_string(g2) +
                            " is at or beyond the spectral collapse point 0.5") {}
};

// invalid sizes, non-finite couplings, unsupported flag combinations, ...
class param_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// a closed-form evaluation broke one of its own structural guarantees
// (e.g. a provably real quantity acquired a non-negligible imaginary part)
class inconsistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// the requested object cannot be represented faithfully at this truncation
class truncation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// the trigonometric cubic route requires three distinct real roots
class degenerate_root_error : public std::runtime_error {
public:
    double gamma;  // sign-test combination that failed (>= 0 means a repeated root)
    degenerate_root_error(const std::string& msg, double gamma_value)
        : std::runtime_error(msg), gamma(gamma_value) {}
};

}  // namespace qrabi
