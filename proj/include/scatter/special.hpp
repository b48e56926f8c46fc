#ifndef SCATTER_SPECIAL_HPP
#define SCATTER_SPECIAL_HPP

#include <optional>

namespace scatter {

// Parameters of the Gauss hypergeometric function 2F1(a, b; c; kappa).
// The library exercises the family a in {1,2}, b = d2/2 or (d2+2)/2,
// c = (d+2)/2 or (d+4)/2, kappa = 1 - rho^2 in [0, 1).
struct Hyp2F1Params {
    double a;
    double b;
    double c;
    double kappa;
};

// 2F1(a, b; c; kappa) for kappa in [0, 1).
//
// Moderate arguments (kappa <= 0.925) use the power series directly. Near
// the unit argument the series needs O(1/(1-kappa)) terms, so the value is
// assembled from the 1-kappa connection formulas instead: the two-series
// form when c-a-b is not an integer, the logarithmic form when c-a-b is a
// non-negative integer. Both converge in a handful of terms.
double hyp2f1(const Hyp2F1Params& p);

// Asymptotic relative efficiency of the SSCM eigenprojection versus the
// affine equivariant benchmark, for a two-group spectrum (d, d1) with
// eigenvalue ratio rho^2:
//
//   ARE = 2F1(1, (d2+2)/2; (d+4)/2; 1-rho^2)^2 / 2F1(2, (d2+2)/2; (d+4)/2; 1-rho^2)
//
// With sigma1 given, the reference estimator is a general affine
// equivariant scatter estimate and the result is scaled by sigma1*d/(d+2).
double are_hypergeometric(int d, int d1, double rho,
                          std::optional<double> sigma1 = std::nullopt);

// Limit of the ARE as rho -> 0: (1 + 2/d)(1 - 2/d1) for d1 > 2, else 0.
double are_limit_rho0(int d, int d1);

// Digamma for positive arguments (used by the logarithmic connection
// formula; exposed for tests).
double digamma(double x);

}  // namespace scatter

#endif
