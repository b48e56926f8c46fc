#include "scatter/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "scatter/errors.hpp"
#include "scatter/special.hpp"

namespace scatter {

namespace {

constexpr double kQuadTol = 1e-11;
constexpr double kGroupGapFloor = 1e-10;

// The expectations reduce to integrals over t in (0, inf) of
//   prefix * t^{u_power} * prod_r (1 + 2 lambda_r t)^{-e_r/2}.
// Two substitutions make the integrand polynomially smooth on [0, 1]:
// t = u/(1-u) maps to the unit interval and leaves a factor
// (1-u)^{(d-2)/2}, whose half powers (odd d) have a derivative singularity
// at u = 1; u = 1 - v^2 then turns that factor into v^{d-1}, an integer
// power, so adaptive Simpson sees a C-infinity integrand for every d >= 2.
struct ChiRatioIntegrand {
    double prefix;
    int u_power;  // 0 for phi, 1 for psi
    int v_power;  // d - 1
    std::vector<double> lambda;
    std::vector<double> half_exponent;  // e_r / 2

    double operator()(double v) const {
        const double u = 1.0 - v * v;
        double val = 2.0 * prefix;
        if (u_power == 1) val *= u;
        double vp = 1.0;
        for (int p = 0; p < v_power; ++p) vp *= v;
        val *= vp;
        for (std::size_t r = 0; r < lambda.size(); ++r) {
            const double w = v * v + 2.0 * lambda[r] * u;
            val *= std::pow(w, -half_exponent[r]);
        }
        return val;
    }
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw numerical_error("adaptive quadrature: recursion limit reached");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate01(const std::function<double(double)>& f, double tol) {
    const double fa = f(0.0), fm = f(0.5), fb = f(1.0);
    const double whole = simpson(0.0, 1.0, fa, fm, fb);
    return adaptive_step(f, 0.0, 1.0, fa, fm, fb, whole, tol, 48);
}

// Trace-normalized group eigenvalues; the expectations are scale invariant,
// and unit scale keeps the integrand factors near one.
std::vector<double> normalized_values(const Spectrum& s) {
    double trace = 0.0;
    for (std::size_t j = 0; j < s.group_count(); ++j) {
        if (!(s.distinct_values[j] > 0.0))
            throw domain_error("chi-square ratio expectation: eigenvalues must be positive");
        trace += s.distinct_values[j] * double(s.multiplicities[j]);
    }
    std::vector<double> lam(s.group_count());
    for (std::size_t j = 0; j < s.group_count(); ++j) lam[j] = s.distinct_values[j] / trace;
    return lam;
}

std::size_t total_dim(const Spectrum& s) {
    std::size_t d = 0;
    for (std::size_t m : s.multiplicities) d += m;
    return d;
}

double phi_group(const std::vector<double>& lam, const std::vector<std::size_t>& mult,
                 std::size_t j) {
    const std::size_t m = lam.size();
    std::size_t d = 0;
    for (std::size_t r = 0; r < m; ++r) d += mult[r];
    ChiRatioIntegrand g;
    g.prefix = lam[j];
    g.u_power = 0;
    g.v_power = int(d) - 1;
    g.lambda = lam;
    g.half_exponent.resize(m);
    for (std::size_t r = 0; r < m; ++r)
        g.half_exponent[r] = 0.5 * (double(mult[r]) + (r == j ? 2.0 : 0.0));
    return integrate01(std::cref(g), kQuadTol);
}

}  // namespace

void TwoGroupShape::validate() const {
    if (d1 < 1 || d1 >= d) throw invalid_input_error("TwoGroupShape: need 1 <= d1 < d");
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw invalid_input_error("TwoGroupShape: rho must lie in (0, 1]");
}

Spectrum two_group_spectrum(const TwoGroupShape& shape) {
    shape.validate();
    const double r2 = shape.rho * shape.rho;
    const double l1 = 1.0 / (double(shape.d1) + double(shape.d2()) * r2);
    Spectrum s;
    s.distinct_values = {l1, r2 * l1};
    s.multiplicities = {std::size_t(shape.d1), std::size_t(shape.d2())};
    s.basis = Matrix::identity(std::size_t(shape.d));
    return s;
}

std::vector<double> phi_map(const Spectrum& spectrum) {
    const std::vector<double> lam = normalized_values(spectrum);
    std::vector<double> phi(lam.size());
    for (std::size_t j = 0; j < lam.size(); ++j)
        phi[j] = phi_group(lam, spectrum.multiplicities, j);
    return phi;
}

std::vector<double> phi_of_eigenvalues(const std::vector<double>& lambda) {
    Spectrum s;
    s.distinct_values = lambda;
    s.multiplicities.assign(lambda.size(), 1);
    s.basis = Matrix::identity(lambda.size());
    return phi_map(s);
}

double psi_jk(const Spectrum& spectrum, std::size_t j, std::size_t k) {
    if (j == k) throw invalid_input_error("psi_jk: indices must differ");
    const std::size_t m = spectrum.group_count();
    if (j >= m || k >= m) throw invalid_input_error("psi_jk: group index out of range");
    const std::vector<double> lam = normalized_values(spectrum);
    const std::size_t d = total_dim(spectrum);

    ChiRatioIntegrand g;
    g.prefix = lam[j] * lam[k];
    g.u_power = 1;
    g.v_power = int(d) - 1;
    g.lambda = lam;
    g.half_exponent.resize(m);
    for (std::size_t r = 0; r < m; ++r)
        g.half_exponent[r] =
            0.5 * (double(spectrum.multiplicities[r]) + (r == j || r == k ? 2.0 : 0.0));
    return integrate01(std::cref(g), kQuadTol);
}

double alpha_tyler(double lambda_j, double lambda_k, std::size_t d) {
    if (!(lambda_j > 0.0) || !(lambda_k > 0.0))
        throw domain_error("alpha_tyler: eigenvalues must be positive");
    const double gap = lambda_j - lambda_k;
    if (std::abs(gap) < kGroupGapFloor * std::max(lambda_j, lambda_k))
        throw degenerate_spectrum_error(
            "alpha_tyler: equal eigenvalues, asymptotic variance undefined");
    return (double(d) + 2.0) / double(d) * 2.0 * lambda_j * lambda_k / (gap * gap);
}

double alpha_sscm(const Spectrum& spectrum, std::size_t j, std::size_t k) {
    if (j == k) throw invalid_input_error("alpha_sscm: indices must differ");
    const std::vector<double> lam = normalized_values(spectrum);
    if (std::abs(lam[j] - lam[k]) < kGroupGapFloor * std::max(lam[j], lam[k]))
        throw degenerate_spectrum_error("alpha_sscm: merged eigenvalue groups");
    const std::vector<double> phi = phi_map(spectrum);
    const double dphi = phi[j] - phi[k];
    return 2.0 * psi_jk(spectrum, j, k) / (dphi * dphi);
}

Matrix coupling_projector(const Spectrum& spectrum, std::size_t j, std::size_t k) {
    const std::size_t d = total_dim(spectrum);
    const Matrix pj = spectrum.projector(j).dense();
    const Matrix pk = spectrum.projector(k).dense();
    const Matrix ik = Matrix::identity(d * d) + commutation_matrix(d);
    return 0.5 * (ik * (kron(pj, pk) + kron(pk, pj)));
}

Matrix eigenprojection_covariance(const Spectrum& spectrum, std::size_t j,
                                  EstimatorKind estimator) {
    const std::size_t m = spectrum.group_count();
    if (j >= m) throw invalid_input_error("eigenprojection_covariance: group out of range");
    const std::size_t d = total_dim(spectrum);
    for (std::size_t a = 0; a + 1 < m; ++a)
        if (spectrum.distinct_values[a] - spectrum.distinct_values[a + 1] <
            kGroupGapFloor * std::max(std::abs(spectrum.distinct_values[a]), 1.0))
            throw degenerate_spectrum_error(
                "eigenprojection_covariance: eigenvalue groups are not distinct");

    Matrix v(d * d, d * d);
    for (std::size_t k = 0; k < m; ++k) {
        if (k == j) continue;
        double alpha;
        if (estimator == EstimatorKind::tyler)
            alpha = alpha_tyler(spectrum.distinct_values[j], spectrum.distinct_values[k], d);
        else
            alpha = alpha_sscm(spectrum, j, k);
        v = v + alpha * coupling_projector(spectrum, j, k);
    }
    return v;
}

std::vector<double> invert_phi_map(const std::vector<double>& phi_hat) {
    const std::size_t d = phi_hat.size();
    if (d < 2) throw invalid_input_error("invert_phi_map: need at least two entries");
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (!(phi_hat[i] > 0.0))
            throw invalid_input_error("invert_phi_map: entries must be positive");
        if (i > 0 && phi_hat[i] > phi_hat[i - 1])
            throw invalid_input_error("invert_phi_map: entries must be descending");
        sum += phi_hat[i];
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw invalid_input_error("invert_phi_map: entries must sum to 1 within 1e-6");

    std::vector<double> target(d);
    for (std::size_t i = 0; i < d; ++i) target[i] = phi_hat[i] / sum;

    std::vector<double> lam = target;  // spherical-adjacent start
    const double step = 0.5;
    const long max_iter = 10000;
    double residual = 0.0;
    for (long iter = 0; iter < max_iter; ++iter) {
        const std::vector<double> phi = phi_of_eigenvalues(lam);
        residual = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            residual = std::max(residual, std::abs(phi[i] - target[i]));
        if (residual < 1e-10) return lam;

        double trace = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            lam[i] *= std::pow(target[i] / phi[i], step);
            trace += lam[i];
        }
        for (std::size_t i = 0; i < d; ++i) lam[i] /= trace;
    }
    throw convergence_error("invert_phi_map: fixed point did not converge; residual " +
                                std::to_string(residual),
                            residual, max_iter);
}

AsymptoticCoefficients compute_coefficients(const Spectrum& spectrum) {
    const std::size_t m = spectrum.group_count();
    const std::size_t d = total_dim(spectrum);
    AsymptoticCoefficients out;
    out.phi = phi_map(spectrum);
    out.psi = Matrix(m, m);
    out.alpha_tyler = Matrix(m, m);
    out.alpha_sscm = Matrix(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
            const double psi = psi_jk(spectrum, j, k);
            out.psi(j, k) = out.psi(k, j) = psi;
            const double at =
                alpha_tyler(spectrum.distinct_values[j], spectrum.distinct_values[k], d);
            out.alpha_tyler(j, k) = out.alpha_tyler(k, j) = at;
            const double dphi = out.phi[j] - out.phi[k];
            const double as = 2.0 * psi / (dphi * dphi);
            out.alpha_sscm(j, k) = out.alpha_sscm(k, j) = as;
        }
    return out;
}

double two_group_phi1(const TwoGroupShape& shape) {
    shape.validate();
    const double kappa = 1.0 - shape.rho * shape.rho;
    return hyp2f1({1.0, 0.5 * shape.d2(), 0.5 * (shape.d + 2), kappa}) / shape.d;
}

double two_group_phi2(const TwoGroupShape& shape) {
    shape.validate();
    const double r2 = shape.rho * shape.rho;
    return hyp2f1({1.0, 0.5 * (shape.d2() + 2), 0.5 * (shape.d + 2), 1.0 - r2}) * r2 /
           shape.d;
}

double two_group_psi(const TwoGroupShape& shape) {
    shape.validate();
    const double r2 = shape.rho * shape.rho;
    return hyp2f1({2.0, 0.5 * (shape.d2() + 2), 0.5 * (shape.d + 4), 1.0 - r2}) * r2 /
           (double(shape.d) * double(shape.d + 2));
}

}  // namespace scatter
