#ifndef SCATTER_ESTIMATORS_HPP
#define SCATTER_ESTIMATORS_HPP

#include <string>
#include <vector>

#include "scatter/linalg.hpp"
#include "scatter/sampling.hpp"

namespace scatter {

enum class ScatterKind { sscm, tyler, corrected_sscm };

struct ScatterEstimate {
    SymMatrix matrix;          // trace-normalized to 1
    ScatterKind estimator_tag;
    long iterations = 0;       // tyler only
    double residual = 0.0;     // tyler only: final fixed-point residual
    std::size_t n_used = 0;    // observations retained
};

// Spatial sign covariance matrix about a known center:
//   S = (1/n) sum theta_i theta_i^T,  theta_i = (x_i - mu)/||x_i - mu||.
// Observations closer to the center than 1e-12 times the median nonzero
// distance are dropped (theta is undefined there) and excluded from n_used.
ScatterEstimate sscm(const Dataset& data, const std::vector<double>& center);

// Tyler's distribution-free M-estimate of scatter about a known center:
// the trace-1 fixed point of
//   T = (d/n) sum theta_i theta_i^T / (theta_i^T T^{-1} theta_i).
// Computed by the IRLS iteration T <- normalize(rhs(T)) started at I/d;
// stops when the Frobenius change drops below tol.
ScatterEstimate tyler(const Dataset& data, const std::vector<double>& center,
                      double tol = 1e-10, long max_iter = 1000);

// Consistency-corrected SSCM: keeps the SSCM eigenvectors and replaces the
// eigenvalues with the inverse of the bias map h (see invert_phi_map).
ScatterEstimate corrected_sscm(const Dataset& data, const std::vector<double>& center);

}  // namespace scatter

#endif
