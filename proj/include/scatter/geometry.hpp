#ifndef SCATTER_GEOMETRY_HPP
#define SCATTER_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "scatter/estimators.hpp"
#include "scatter/linalg.hpp"

namespace scatter {

// A linear subspace of R^d given by an orthonormal basis (d x l columns).
struct Subspace {
    Matrix basis;

    std::size_t ambient_dim() const { return basis.rows(); }
    std::size_t dim() const { return basis.cols(); }
};

// Principal angles, ascending, each in [0, pi/2].
struct AngleSet {
    std::vector<double> angles;
};

struct EigenprojectionResult {
    Subspace subspace;
    SymMatrix projector;
    // Set when the requested group boundary splits numerically equal
    // eigenvalues; the projection is then basis dependent.
    bool boundary_warning = false;
    double boundary_gap = 0.0;
};

// Eigenprojection of a scatter estimate onto the j-th group (0-based) of
// the given multiplicity pattern.
EigenprojectionResult eigenprojection(const ScatterEstimate& estimate,
                                      const std::vector<std::size_t>& group_sizes,
                                      std::size_t j);

// Principal angles via the singular values of Q_M^T Q_L (cosines). Values
// above 1 + 1e-8 raise a numerical error; values near 1 are refined through
// the sine route, the singular values of (I - P_M) Q_L, which keeps small
// angles accurate.
AngleSet principal_angles(const Subspace& l, const Subspace& m);

// Sum of the squared principal angles between two rank-d1 projectors,
// computed from the eigenvalues of the d1 x d1 compression of P_hat onto
// the range of P_true. Range: [0, d1 (pi/2)^2].
double squared_angle_loss(const SymMatrix& p_hat, const SymMatrix& p_true,
                          std::size_t d1);

// Fast path used by the simulation harness: the true projector is the
// top-left identity block of size d1.
double squared_angle_loss_identity_block(const SymMatrix& p_hat, std::size_t d1);

}  // namespace scatter

#endif
