#include "scatter/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

constexpr double kClampSlack = 1e-8;
constexpr double kSineRouteThreshold = 1.0 - 1e-6;

double checked_clamp01(double v, const char* what) {
    if (v > 1.0 + kClampSlack)
        throw numerical_error(std::string(what) + ": cosine exceeds 1 beyond rounding slack");
    return std::clamp(v, 0.0, 1.0);
}

// Angle from sin^2, stable at both ends of [0, pi/2].
double angle_from_sin2(double s2) {
    s2 = std::clamp(s2, 0.0, 1.0);
    if (s2 <= 0.5) return std::asin(std::sqrt(s2));
    return std::acos(std::sqrt(1.0 - s2));
}

}  // namespace

EigenprojectionResult eigenprojection(const ScatterEstimate& estimate,
                                      const std::vector<std::size_t>& group_sizes,
                                      std::size_t j) {
    const std::size_t d = estimate.matrix.dim();
    std::size_t total = 0;
    for (std::size_t m : group_sizes) total += m;
    if (total != d)
        throw invalid_input_error("eigenprojection: group sizes must sum to the dimension");
    if (j >= group_sizes.size())
        throw invalid_input_error("eigenprojection: group index out of range");

    const EigenDecomposition eig = sym_eig(estimate.matrix);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < j; ++k) offset += group_sizes[k];
    const std::size_t width = group_sizes[j];

    EigenprojectionResult out{Subspace{Matrix(d, width)}, SymMatrix(d), false, 0.0};
    for (std::size_t c = 0; c < width; ++c)
        for (std::size_t i = 0; i < d; ++i)
            out.subspace.basis(i, c) = eig.vectors(i, offset + c);

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = i; k < d; ++k) {
            double s = 0.0;
            for (std::size_t c = 0; c < width; ++c)
                s += out.subspace.basis(i, c) * out.subspace.basis(k, c);
            out.projector.set(i, k, s);
        }

    // A vanishing eigenvalue gap at either group edge means the split is
    // numerically arbitrary; report it, do not fail.
    const double scale = std::max(std::abs(eig.values.front()), 1e-300);
    double gap = 2.0 * scale;
    if (offset > 0) gap = std::min(gap, eig.values[offset - 1] - eig.values[offset]);
    if (offset + width < d)
        gap = std::min(gap, eig.values[offset + width - 1] - eig.values[offset + width]);
    out.boundary_gap = gap;
    out.boundary_warning = gap < 1e-10 * scale;
    return out;
}

AngleSet principal_angles(const Subspace& l, const Subspace& m) {
    if (l.ambient_dim() != m.ambient_dim())
        throw invalid_input_error("principal_angles: ambient dimensions differ");
    const Subspace& small = l.dim() <= m.dim() ? l : m;
    const Subspace& large = l.dim() <= m.dim() ? m : l;

    const Matrix product = large.basis.transposed() * small.basis;
    std::vector<double> cosines = singular_values(product);
    for (double& c : cosines) c = checked_clamp01(c, "principal_angles");

    // Sine route for nearly coincident directions: singular values of
    // (I - P_large) Q_small pair with the cosines in reverse order.
    std::vector<double> sines;
    if (!cosines.empty() && cosines.front() > kSineRouteThreshold) {
        Matrix residual = small.basis - large.basis * product;
        sines = singular_values(residual, true);
    }

    AngleSet out;
    out.angles.resize(cosines.size());
    const std::size_t n = cosines.size();
    for (std::size_t i = 0; i < n; ++i) {
        // cosines descending; angles ascending share the index
        double angle;
        if (cosines[i] > kSineRouteThreshold && !sines.empty())
            angle = std::asin(std::min(sines[n - 1 - i], 1.0));
        else
            angle = std::acos(cosines[i]);
        out.angles[i] = angle;
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

double squared_angle_loss(const SymMatrix& p_hat, const SymMatrix& p_true,
                          std::size_t d1) {
    if (p_hat.dim() != p_true.dim())
        throw invalid_input_error("squared_angle_loss: dimension mismatch");
    if (std::abs(p_hat.trace() - double(d1)) > 1e-6 ||
        std::abs(p_true.trace() - double(d1)) > 1e-6)
        throw invalid_input_error("squared_angle_loss: projector trace does not match d1");

    const std::size_t d = p_true.dim();
    const EigenDecomposition eig = sym_eig(p_true);
    // Columns spanning the range of the true projector.
    Matrix q1(d, d1);
    for (std::size_t c = 0; c < d1; ++c)
        for (std::size_t i = 0; i < d; ++i) q1(i, c) = eig.vectors(i, c);

    // sin^2 of the principal angles are the eigenvalues of Q1^T (I - P) Q1.
    SymMatrix complement(d1);
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = a; b < d1; ++b) {
            double s = (a == b) ? 1.0 : 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                double pi = 0.0;
                for (std::size_t k = 0; k < d; ++k) pi += p_hat(i, k) * q1(k, b);
                s -= q1(i, a) * pi;
            }
            complement.set(a, b, s);
        }
    double loss = 0.0;
    for (double s2 : sym_eig(complement).values) {
        const double angle = angle_from_sin2(s2);
        loss += angle * angle;
    }
    return loss;
}

double squared_angle_loss_identity_block(const SymMatrix& p_hat, std::size_t d1) {
    SymMatrix complement(d1);
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = a; b < d1; ++b)
            complement.set(a, b, (a == b ? 1.0 : 0.0) - p_hat(a, b));
    double loss = 0.0;
    for (double s2 : sym_eig(complement).values) {
        const double angle = angle_from_sin2(s2);
        loss += angle * angle;
    }
    return loss;
}

}  // namespace scatter
