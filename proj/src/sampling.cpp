#include "scatter/sampling.hpp"

#include <cmath>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Decompose a positive definite scatter into Q diag(sqrt(lambda)) Q^T,
// rejecting non-PD inputs.
SymMatrix pd_sqrt_checked(const SymMatrix& gamma) {
    EigenDecomposition eig = sym_eig(gamma);
    if (eig.values.back() <= 0.0)
        throw domain_error("sampling: scatter matrix must be positive definite");
    const std::size_t d = gamma.dim();
    SymMatrix root(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                s += eig.vectors(i, k) * std::sqrt(eig.values[k]) * eig.vectors(j, k);
            root.set(i, j, s);
        }
    return root;
}

void apply_sym(const SymMatrix& m, const double* in, double* out) {
    const std::size_t d = m.dim();
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += m(i, j) * in[j];
        out[i] = s;
    }
}

}  // namespace

RandomStream::RandomStream(SeedSpec seed) {
    key_[0] = std::uint32_t(seed.master_seed);
    key_[1] = std::uint32_t(seed.master_seed >> 32);
    stream_[0] = std::uint32_t(seed.stream_id);
    stream_[1] = std::uint32_t(seed.stream_id >> 32);
}

void RandomStream::refill() {
    std::uint32_t c0 = std::uint32_t(block_);
    std::uint32_t c1 = std::uint32_t(block_ >> 32);
    std::uint32_t c2 = stream_[0];
    std::uint32_t c3 = stream_[1];
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(0xD2511F53u, c0, hi0, lo0);
        mulhilo(0xCD9E8D57u, c2, hi1, lo1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    out_[0] = c0; out_[1] = c1; out_[2] = c2; out_[3] = c3;
    avail_ = 4;
    ++block_;
}

std::uint64_t RandomStream::next_u64() {
    if (avail_ < 2) refill();
    const std::uint64_t lo = out_[4 - avail_];
    const std::uint64_t hi = out_[5 - avail_];
    avail_ -= 2;
    return (hi << 32) | lo;
}

double RandomStream::uniform() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_normal_ = r * std::sin(kTwoPi * u2);
    have_cached_normal_ = true;
    return r * std::cos(kTwoPi * u2);
}

double RandomStream::chi_square(unsigned k) {
    double s = 0.0;
    for (unsigned i = 0; i < k; ++i) {
        const double z = normal();
        s += z * z;
    }
    return s;
}

double RandomStream::gamma(double alpha) {
    if (!(alpha > 0.0)) throw domain_error("gamma: alpha must be positive");
    if (alpha < 1.0) {
        // boost: gamma(alpha) = gamma(alpha+1) * U^{1/alpha}
        const double u = uniform();
        return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::uint64_t derive_stream_id(std::uint64_t n, std::uint64_t replicate) {
    return splitmix64(splitmix64(n) ^ replicate);
}

Dataset sample_normal(std::size_t n, const SymMatrix& gamma, SeedSpec seed) {
    if (n < 1) throw invalid_input_error("sample_normal: n must be >= 1");
    const std::size_t d = gamma.dim();
    const SymMatrix root = pd_sqrt_checked(gamma);
    RandomStream rng(seed);
    Dataset data;
    data.n = n;
    data.d = d;
    data.rows.resize(n * d);
    std::vector<double> g(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) g[j] = rng.normal();
        apply_sym(root, g.data(), &data.rows[i * d]);
    }
    return data;
}

Dataset sample_elliptical(std::size_t n, const SymMatrix& gamma, RadialLaw radial,
                          SeedSpec seed) {
    if (n < 1) throw invalid_input_error("sample_elliptical: n must be >= 1");
    if (radial.kind == RadialKind::student_t && !(radial.param > 0.0))
        throw invalid_input_error("sample_elliptical: student_t needs nu > 0");
    const std::size_t d = gamma.dim();
    const SymMatrix root = pd_sqrt_checked(gamma);
    RandomStream rng(seed);
    Dataset data;
    data.n = n;
    data.d = d;
    data.rows.resize(n * d);
    std::vector<double> g(d), u(d);
    for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            g[j] = rng.normal();
            norm2 += g[j] * g[j];
        }
        const double norm = std::sqrt(norm2);
        for (std::size_t j = 0; j < d; ++j) u[j] = g[j] / norm;

        double r;
        switch (radial.kind) {
            case RadialKind::constant:
                r = radial.param;
                break;
            case RadialKind::chi_d:
                r = std::sqrt(rng.chi_square(unsigned(d)));
                break;
            case RadialKind::student_t:
                r = std::sqrt(rng.chi_square(unsigned(d)) /
                              (2.0 * rng.gamma(0.5 * radial.param) / radial.param));
                break;
            default:
                throw invalid_input_error("sample_elliptical: unknown radial law");
        }
        for (std::size_t j = 0; j < d; ++j) u[j] *= r;
        apply_sym(root, u.data(), &data.rows[i * d]);
    }
    return data;
}

Dataset sample_acg(std::size_t n, const SymMatrix& gamma, SeedSpec seed) {
    if (n < 1) throw invalid_input_error("sample_acg: n must be >= 1");
    const std::size_t d = gamma.dim();
    // ACG_d(Gamma) = ACG_d(beta Gamma): normalizing by the trace pins one
    // representative, and does so exactly when the scaled entries and trace
    // are exact floating-point multiples.
    const double tr = gamma.trace();
    if (!(tr > 0.0)) throw domain_error("sample_acg: scatter matrix must be positive definite");
    SymMatrix scaled(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) scaled.set(i, j, gamma(i, j) / tr);

    const SymMatrix root = pd_sqrt_checked(scaled);
    RandomStream rng(seed);
    Dataset data;
    data.n = n;
    data.d = d;
    data.rows.resize(n * d);
    std::vector<double> g(d), z(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) g[j] = rng.normal();
        apply_sym(root, g.data(), z.data());
        double norm2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) norm2 += z[j] * z[j];
        const double norm = std::sqrt(norm2);
        for (std::size_t j = 0; j < d; ++j) data.rows[i * d + j] = z[j] / norm;
    }
    return data;
}

}  // namespace scatter
