#ifndef SCATTER_SAMPLING_HPP
#define SCATTER_SAMPLING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "scatter/linalg.hpp"

namespace scatter {

// Identifies one reproducible random stream. Distinct stream_ids select
// disjoint counter blocks of the same keyed generator, so streams never
// overlap regardless of how much each one draws.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

// Philox 4x32-10 counter-based generator. Fixed algorithm and bit widths;
// the same SeedSpec yields the same draw sequence on every platform.
class RandomStream {
public:
    explicit RandomStream(SeedSpec seed);

    std::uint64_t next_u64();
    // uniform on (0, 1), never returns an endpoint
    double uniform();
    // standard normal via Box-Muller
    double normal();
    // chi-square on k degrees of freedom (integer k), as a sum of squares
    double chi_square(unsigned k);
    // gamma(alpha, scale 1) via Marsaglia-Tsang, any alpha > 0
    double gamma(double alpha);

private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t stream_[2];
    std::uint64_t block_ = 0;
    std::uint32_t out_[4];
    int avail_ = 0;
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

// Mixes (n, replicate) into a stream id; used by the simulation harness so
// that extending the sample-size grid never perturbs existing replicates.
std::uint64_t derive_stream_id(std::uint64_t n, std::uint64_t replicate);

struct Dataset {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> rows;  // n x d, row-major
    std::optional<std::vector<double>> center;

    double operator()(std::size_t i, std::size_t j) const { return rows[i * d + j]; }
};

enum class RadialKind { constant, chi_d, student_t };

struct RadialLaw {
    RadialKind kind = RadialKind::chi_d;
    double param = 1.0;  // constant value, or degrees of freedom for student_t

    static RadialLaw constant(double value) { return {RadialKind::constant, value}; }
    static RadialLaw chi() { return {RadialKind::chi_d, 0.0}; }
    static RadialLaw student(double nu) { return {RadialKind::student_t, nu}; }
};

// n draws from Normal_d(0, Gamma); Gamma must be positive definite.
Dataset sample_normal(std::size_t n, const SymMatrix& gamma, SeedSpec seed);

// n draws of R * Gamma^{1/2} u_d with u_d uniform on the unit sphere and R
// an independent radial variable.
Dataset sample_elliptical(std::size_t n, const SymMatrix& gamma, RadialLaw radial,
                          SeedSpec seed);

// n draws from the angular central Gaussian ACG_d(Gamma): z/||z|| for
// z ~ Normal(0, Gamma). Gamma is trace-normalized on entry, which makes the
// ACG scale invariance exact whenever beta*Gamma is exactly representable.
Dataset sample_acg(std::size_t n, const SymMatrix& gamma, SeedSpec seed);

}  // namespace scatter

#endif
