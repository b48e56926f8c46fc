#include "scatter/special.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

constexpr long kMaxTerms = 1000000;
// Above this argument the power series is replaced by the 1-kappa
// connection formulas.
constexpr double kSeriesLimit = 0.925;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::abs(x - std::round(x)) < 1e-9;
}

// Power series with compensated summation. Terms follow the ratio
// recurrence; convergence is declared once the geometric tail bound drops
// below the target.
double gauss_series(double a, double b, double c, double x) {
    double sum = 1.0, comp = 0.0, term = 1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const double ratio = std::abs((a + n + 1) * (b + n + 1) /
                                      ((c + n + 1) * (n + 2.0)) * x);
        if (ratio < 1.0) {
            const double tail = std::abs(term) * ratio / (1.0 - ratio);
            if (tail < 1e-16 * std::max(1.0, std::abs(sum))) return sum;
        }
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "hyp2f1 series did not converge: a=%g b=%g c=%g x=%.17g last-term=%g",
                  a, b, c, x, term);
    throw convergence_error(msg, std::abs(term), kMaxTerms);
}

// 15.3.6-type connection, c-a-b not an integer. w = 1-kappa.
double connect_noninteger(double a, double b, double c, double s, double w) {
    const double f1 = std::tgamma(c) * std::tgamma(s) /
                      (std::tgamma(c - a) * std::tgamma(c - b));
    const double f2 = std::tgamma(c) * std::tgamma(-s) /
                      (std::tgamma(a) * std::tgamma(b));
    return f1 * gauss_series(a, b, 1.0 - s, w) +
           f2 * std::pow(w, s) * gauss_series(c - a, c - b, 1.0 + s, w);
}

// Logarithmic connection, c = a+b+m with integer m >= 0. w = 1-kappa.
double connect_integer(double a, double b, double c, long m, double w) {
    double value = 0.0;

    if (m > 0) {
        // finite sum over n = 0..m-1 with (1-m)_n in the denominator
        const double front = std::tgamma(double(m)) * std::tgamma(c) /
                             (std::tgamma(a + m) * std::tgamma(b + m));
        double term = 1.0, sum = 1.0;
        for (long n = 0; n + 1 < m; ++n) {
            term *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
            sum += term;
        }
        value += front * sum;
    }

    const double lw = std::log(w);
    const double front = ((m % 2 == 0) ? -1.0 : 1.0) * std::tgamma(c) /
                         (std::tgamma(a) * std::tgamma(b)) * std::pow(w, double(m));
    double u = 1.0 / std::tgamma(double(m) + 1.0);  // 1/m!
    double bracket = lw - digamma(1.0) - digamma(double(m) + 1.0) +
                     digamma(a + m) + digamma(b + m);
    double sum = u * bracket, comp = 0.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        u *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w;
        bracket += -1.0 / (n + 1.0) - 1.0 / (n + m + 1.0) +
                   1.0 / (a + m + n) + 1.0 / (b + m + n);
        const double term = u * bracket;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)) && n > 2)
            return value + front * sum;
    }
    throw convergence_error("hyp2f1 logarithmic expansion did not converge",
                            std::abs(u), kMaxTerms);
}

double hyp2f1_impl(double a, double b, double c, double kappa, double complement) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)))
        throw invalid_input_error("hyp2f1: non-finite parameters");
    if (is_nonpositive_integer(c))
        throw invalid_input_error("hyp2f1: c must not be a non-positive integer");
    if (!(kappa >= 0.0) || kappa >= 1.0)
        throw domain_error("hyp2f1: kappa must lie in [0, 1)");

    if (kappa == 0.0) return 1.0;
    if (kappa <= kSeriesLimit) return gauss_series(a, b, c, kappa);

    const double s = c - a - b;
    const double rounded = std::round(s);
    if (std::abs(s - rounded) < 1e-9) {
        const long m = static_cast<long>(rounded);
        if (m >= 0) return connect_integer(a, b, c, m, complement);
        // c-a-b a negative integer: fall back to the Euler transform, whose
        // image has a positive integer gap.
        return std::pow(complement, s) *
               connect_integer(c - a, c - b, c, -m, complement);
    }
    return connect_noninteger(a, b, c, s, complement);
}

}  // namespace

double digamma(double x) {
    if (!(x > 0.0)) throw domain_error("digamma: argument must be positive");
    double value = 0.0;
    while (x < 8.0) {
        value -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // asymptotic expansion, Bernoulli coefficients
    value += std::log(x) - 0.5 * inv -
             inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                     inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    return value;
}

double hyp2f1(const Hyp2F1Params& p) {
    return hyp2f1_impl(p.a, p.b, p.c, p.kappa, 1.0 - p.kappa);
}

double are_hypergeometric(int d, int d1, double rho, std::optional<double> sigma1) {
    if (d1 < 1 || d1 >= d)
        throw invalid_input_error("are_hypergeometric: need 1 <= d1 < d");
    if (rho == 0.0)
        throw domain_error("are_hypergeometric: rho = 0 has no finite expression; "
                           "use are_limit_rho0");
    if (rho < 1e-6)
        throw domain_error("are_hypergeometric: rho below the supported floor 1e-6; "
                           "use are_limit_rho0");
    if (!(rho <= 1.0))
        throw invalid_input_error("are_hypergeometric: rho must lie in (0, 1]");
    if (sigma1 && !(*sigma1 > 0.0))
        throw invalid_input_error("are_hypergeometric: sigma1 must be positive");

    const double d2 = double(d - d1);
    const double w = rho * rho;     // exact complement of kappa
    const double kappa = 1.0 - w;
    const double b = 0.5 * (d2 + 2.0);
    const double c = 0.5 * (d + 4.0);
    const double fa = hyp2f1_impl(1.0, b, c, kappa, w);
    const double fb = hyp2f1_impl(2.0, b, c, kappa, w);
    double are = fa * fa / fb;
    if (sigma1) are *= *sigma1 * double(d) / double(d + 2);
    return are;
}

double are_limit_rho0(int d, int d1) {
    if (d1 < 1 || d1 >= d) throw invalid_input_error("are_limit_rho0: need 1 <= d1 < d");
    if (d1 <= 2) return 0.0;
    return (1.0 + 2.0 / double(d)) * (1.0 - 2.0 / double(d1));
}

}  // namespace scatter
