#include "scatter/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/asymptotics.hpp"
#include "scatter/errors.hpp"

namespace scatter {

namespace {

// Unit directions from the center, with the near-center guard.
std::vector<double> directions(const Dataset& data, const std::vector<double>& center,
                               std::size_t& n_used) {
    const std::size_t n = data.n, d = data.d;
    if (center.size() != d) throw invalid_input_error("estimator: center dimension mismatch");

    std::vector<double> norms(n);
    std::vector<double> diffs(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = data(i, j) - center[j];
            diffs[i * d + j] = v;
            s += v * v;
        }
        norms[i] = std::sqrt(s);
    }

    std::vector<double> nonzero;
    nonzero.reserve(n);
    for (double v : norms)
        if (v > 0.0) nonzero.push_back(v);
    if (nonzero.empty())
        throw degenerate_data_error("estimator: every observation sits at the center");
    std::nth_element(nonzero.begin(), nonzero.begin() + nonzero.size() / 2, nonzero.end());
    const double eps_drop = 1e-12 * nonzero[nonzero.size() / 2];

    std::vector<double> theta;
    theta.reserve(n * d);
    n_used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (norms[i] < eps_drop || norms[i] == 0.0) continue;
        for (std::size_t j = 0; j < d; ++j) theta.push_back(diffs[i * d + j] / norms[i]);
        ++n_used;
    }
    if (n_used == 0)
        throw degenerate_data_error("estimator: every observation sits at the center");
    return theta;
}

SymMatrix mean_outer(const std::vector<double>& theta, std::size_t n_used, std::size_t d) {
    SymMatrix s(d);
    for (std::size_t i = 0; i < n_used; ++i) {
        const double* t = &theta[i * d];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b) s.set(a, b, s(a, b) + t[a] * t[b]);
    }
    s *= 1.0 / double(n_used);
    return s;
}

}  // namespace

ScatterEstimate sscm(const Dataset& data, const std::vector<double>& center) {
    if (data.n < 1) throw invalid_input_error("sscm: need at least one observation");
    std::size_t n_used = 0;
    const std::vector<double> theta = directions(data, center, n_used);
    ScatterEstimate est{mean_outer(theta, n_used, data.d), ScatterKind::sscm, 0, 0.0, n_used};
    return est;
}

ScatterEstimate tyler(const Dataset& data, const std::vector<double>& center, double tol,
                      long max_iter) {
    const std::size_t d = data.d;
    if (data.n < d) throw degenerate_data_error("tyler: need n >= d observations");
    std::size_t n_used = 0;
    const std::vector<double> theta = directions(data, center, n_used);
    if (n_used < d) throw degenerate_data_error("tyler: retained directions cannot span R^d");

    // Spanning check: the direction outer-product mean must have full rank.
    {
        EigenDecomposition eig = sym_eig(mean_outer(theta, n_used, d));
        if (eig.values.back() < 1e-12)
            throw degenerate_data_error("tyler: directions do not span R^d");
    }

    SymMatrix t = SymMatrix::identity(d);
    t *= 1.0 / double(d);
    double change = 0.0;
    std::vector<double> th(d);
    for (long iter = 1; iter <= max_iter; ++iter) {
        const Matrix l = cholesky(t);
        SymMatrix next(d);
        for (std::size_t i = 0; i < n_used; ++i) {
            for (std::size_t j = 0; j < d; ++j) th[j] = theta[i * d + j];
            const std::vector<double> solved = cholesky_solve(l, th);
            double w = 0.0;
            for (std::size_t j = 0; j < d; ++j) w += th[j] * solved[j];
            const double inv_w = 1.0 / w;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b)
                    next.set(a, b, next(a, b) + th[a] * th[b] * inv_w);
        }
        next *= double(d) / double(n_used);
        next *= 1.0 / next.trace();

        change = frobenius_diff(t, next);
        t = next;
        if (change < tol)
            return {t, ScatterKind::tyler, iter, change, n_used};
    }
    throw convergence_error("tyler: IRLS did not reach tolerance " + std::to_string(tol),
                            change, max_iter);
}

ScatterEstimate corrected_sscm(const Dataset& data, const std::vector<double>& center) {
    ScatterEstimate s = sscm(data, center);
    EigenDecomposition eig = sym_eig(s.matrix);
    if (eig.values.back() <= 0.0)
        throw degenerate_data_error(
            "corrected_sscm: SSCM is rank deficient, bias map not invertible");

    double sum = 0.0;
    for (double v : eig.values) sum += v;
    std::vector<double> phi_hat(eig.values);
    for (double& v : phi_hat) v /= sum;

    const std::vector<double> lambda = invert_phi_map(phi_hat);

    const std::size_t d = data.d;
    SymMatrix corrected(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                v += eig.vectors(i, k) * lambda[k] * eig.vectors(j, k);
            corrected.set(i, j, v);
        }
    return {corrected, ScatterKind::corrected_sscm, 0, 0.0, s.n_used};
}

}  // namespace scatter
