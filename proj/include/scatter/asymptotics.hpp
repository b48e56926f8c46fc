#ifndef SCATTER_ASYMPTOTICS_HPP
#define SCATTER_ASYMPTOTICS_HPP

#include <cstddef>
#include <vector>

#include "scatter/linalg.hpp"

namespace scatter {

// Two-group scatter structure: d1 eigenvalues at lambda_(1) and d - d1 at
// lambda_(2), parameterized by rho^2 = lambda_(2)/lambda_(1) in (0, 1].
// Every closed-form efficiency in the library is a function of this shape.
struct TwoGroupShape {
    int d;
    int d1;
    double rho;

    int d2() const { return d - d1; }
    double gamma() const { return 1.0 / (rho * rho); }

    void validate() const;
};

// Trace-1 spectrum realizing the shape, with the coordinate basis.
Spectrum two_group_spectrum(const TwoGroupShape& shape);

// Eigenvalues of Xi = E[theta theta^T] per distinct group:
//   phi_(j) = (1/d_j) E[ lambda_(j) X_j / sum_r lambda_(r) X_r ],
// with X_r independent chi-squares on d_r degrees of freedom. Evaluated by
// reducing the expectation to a one-dimensional integral through the
// Laplace identity 1/S = integral_0^inf exp(-tS) dt, which turns each group
// into a factor (1 + 2 lambda_(r) t)^(-e_r/2); the substitution
// t = u/(1-u) then gives a smooth integrand on [0,1] handled by adaptive
// Simpson quadrature to 1e-11.
std::vector<double> phi_map(const Spectrum& spectrum);

// Full-vector variant: every eigenvalue its own group.
std::vector<double> phi_of_eigenvalues(const std::vector<double>& lambda);

// psi_(j,k) = (1/(d_j d_k)) E[ lambda_(j) lambda_(k) X_j X_k / S^2 ], j != k.
// Same reduction with 1/S^2 = integral t exp(-tS) dt.
double psi_jk(const Spectrum& spectrum, std::size_t j, std::size_t k);

// alpha coefficients of the eigenprojection asymptotic covariances.
double alpha_tyler(double lambda_j, double lambda_k, std::size_t d);
double alpha_sscm(const Spectrum& spectrum, std::size_t j, std::size_t k);

enum class EstimatorKind { tyler, sscm };

// The symmetric idempotent coupling block
//   M_{j,k} = (1/2)(I + K_{d,d})(P_j (x) P_k + P_k (x) P_j).
Matrix coupling_projector(const Spectrum& spectrum, std::size_t j, std::size_t k);

// Asymptotic covariance of the j-th eigenprojection estimate:
//   V = sum_{k != j} alpha_{.,j,k} M_{j,k},   rank d_j (d - d_j).
Matrix eigenprojection_covariance(const Spectrum& spectrum, std::size_t j,
                                  EstimatorKind estimator);

// Inverse of the eigenvalue bias map h (all multiplicities one): finds a
// trace-1 positive vector Lambda with phi_of_eigenvalues(Lambda) = phi_hat.
// Damped multiplicative fixed point; converges to max residual < 1e-10.
std::vector<double> invert_phi_map(const std::vector<double>& phi_hat);

// Everything the efficiency analysis needs for one spectrum.
struct AsymptoticCoefficients {
    std::vector<double> phi;  // per group
    Matrix psi;               // m x m, symmetric, diagonal zero
    Matrix alpha_tyler;       // m x m, diagonal zero
    Matrix alpha_sscm;        // m x m, diagonal zero
};

AsymptoticCoefficients compute_coefficients(const Spectrum& spectrum);

// Closed forms for the two-group case (checked against phi_map/psi_jk):
//   psi_(1,2) = 2F1(2, (d2+2)/2; (d+4)/2; 1-rho^2) rho^2 / (d(d+2))
//   phi_(1)   = 2F1(1, d2/2; (d+2)/2; 1-rho^2) / d
//   phi_(2)   = 2F1(1, (d2+2)/2; (d+2)/2; 1-rho^2) rho^2 / d
double two_group_phi1(const TwoGroupShape& shape);
double two_group_phi2(const TwoGroupShape& shape);
double two_group_psi(const TwoGroupShape& shape);

}  // namespace scatter

#endif
