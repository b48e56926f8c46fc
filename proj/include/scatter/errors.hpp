#ifndef SCATTER_ERRORS_HPP
#define SCATTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scatter {

// Base class for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatch, bad grid, non-finite input.
struct invalid_input_error : error {
    using error::error;
};

// Arguments outside the mathematical domain of an operation
// (kappa >= 1, non-PD scatter, rho = 0, ...).
struct domain_error : error {
    using error::error;
};

// A numerical procedure failed to deliver the requested accuracy.
struct numerical_error : error {
    using error::error;
};

// An iteration hit its budget; carries the last residual.
struct convergence_error : numerical_error {
    convergence_error(const std::string& what, double residual_, long iterations_)
        : numerical_error(what), residual(residual_), iterations(iterations_) {}
    double residual;
    long iterations;
};

// Eigenvalue groups collide where the asymptotics have a genuine pole.
struct degenerate_spectrum_error : error {
    using error::error;
};

// Data cannot support the requested estimate (all points at the center,
// directions not spanning, rank-deficient estimate).
struct degenerate_data_error : error {
    using error::error;
};

}  // namespace scatter

#endif
