#include "scatter/simharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "scatter/errors.hpp"
#include "scatter/estimators.hpp"
#include "scatter/geometry.hpp"
#include "scatter/sampling.hpp"
#include "scatter/special.hpp"

namespace scatter {

void SimConfig::validate() const {
    if (d < 2) throw invalid_input_error("SimConfig: d must be >= 2");
    if (d1 < 1 || d1 >= d) throw invalid_input_error("SimConfig: need 1 <= d1 < d");
    if (!(gamma > 1.0)) throw invalid_input_error("SimConfig: gamma must exceed 1");
    if (n_grid.empty()) throw invalid_input_error("SimConfig: empty sample-size grid");
    for (int n : n_grid)
        if (n < d) throw invalid_input_error("SimConfig: every n must be >= d");
    if (replications < 1) throw invalid_input_error("SimConfig: replications must be >= 1");
}

namespace {

struct Slot {
    SimRecord record;
    bool ok = false;
};

// One replicate: shared Normal(0, I) draws; Tyler's estimate rides the
// affine-equivariance shortcut T -> Gamma^(1/2) T Gamma^(1/2), the SSCM is
// recomputed on the scaled data since it is only orthogonally equivariant.
Slot run_replicate(const SimConfig& cfg, int n, int replicate) {
    const std::size_t d = std::size_t(cfg.d);
    const std::size_t d1 = std::size_t(cfg.d1);
    const double root_gamma = std::sqrt(cfg.gamma);

    SeedSpec seed{cfg.master_seed,
                  derive_stream_id(std::uint64_t(n), std::uint64_t(replicate))};
    const Dataset base = sample_normal(std::size_t(n), SymMatrix::identity(d), seed);
    const std::vector<double> origin(d, 0.0);

    Slot slot;
    slot.record.n = n;
    slot.record.replicate = replicate;
    try {
        const ScatterEstimate t_identity = tyler(base, origin);
        SymMatrix t_gamma(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                const double si = i < d1 ? root_gamma : 1.0;
                const double sj = j < d1 ? root_gamma : 1.0;
                t_gamma.set(i, j, si * sj * t_identity.matrix(i, j));
            }
        ScatterEstimate t_est{t_gamma, ScatterKind::tyler, t_identity.iterations,
                              t_identity.residual, t_identity.n_used};
        t_est.matrix *= 1.0 / t_est.matrix.trace();

        Dataset scaled = base;
        for (std::size_t i = 0; i < scaled.n; ++i)
            for (std::size_t j = 0; j < d1; ++j) scaled.rows[i * d + j] *= root_gamma;
        const ScatterEstimate s_est = sscm(scaled, origin);

        const std::vector<std::size_t> groups{d1, d - d1};
        const SymMatrix pt = eigenprojection(t_est, groups, 0).projector;
        const SymMatrix ps = eigenprojection(s_est, groups, 0).projector;

        slot.record.loss_tyler = squared_angle_loss_identity_block(pt, d1);
        slot.record.loss_sscm = squared_angle_loss_identity_block(ps, d1);
        slot.ok = true;
    } catch (const error&) {
        slot.ok = false;  // flagged and excluded, accounted for by the caller
    }
    return slot;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

// Sample median; even counts average the two central order statistics.
double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ExperimentResult run_experiment(const SimConfig& config, unsigned workers) {
    config.validate();
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    const std::size_t cells = config.n_grid.size() * std::size_t(config.replications);
    std::vector<Slot> slots(cells);

    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= cells) return;
            const int n = config.n_grid[idx / std::size_t(config.replications)];
            const int replicate = int(idx % std::size_t(config.replications));
            slots[idx] = run_replicate(config, n, replicate);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    ExperimentResult out;
    out.records.reserve(cells);
    for (const Slot& s : slots) {
        if (s.ok)
            out.records.push_back(s.record);
        else
            ++out.excluded;
    }
    if (double(out.excluded) > 0.001 * double(cells)) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "run_experiment: %ld of %zu replicates failed (> 0.1%%)",
                      out.excluded, cells);
        throw numerical_error(msg);
    }
    return out;
}

std::vector<EfficiencyPoint> relative_efficiency(const SimConfig& config,
                                                 const std::vector<SimRecord>& records,
                                                 int bootstrap_replicates) {
    config.validate();
    const double are = are_hypergeometric(config.d, config.d1, config.rho());

    std::vector<EfficiencyPoint> points;
    for (int n : config.n_grid) {
        std::vector<double> t, w;
        for (const SimRecord& r : records)
            if (r.n == n) {
                t.push_back(r.loss_tyler);
                w.push_back(r.loss_sscm);
            }
        if (t.size() < 2)
            throw invalid_input_error("relative_efficiency: need at least two records per n");
        const double mean_w = mean(w), med_w = median(w);
        if (mean_w == 0.0 || med_w == 0.0)
            throw degenerate_data_error("relative_efficiency: SSCM losses are all zero");

        EfficiencyPoint p;
        p.n = n;
        p.re1 = mean(t) / mean_w;
        p.re2 = median(t) / med_w;
        p.are_asymptotic = are;

        // bootstrap SE of the mean ratio
        if (bootstrap_replicates > 0) {
            RandomStream rng({config.master_seed,
                              derive_stream_id(std::uint64_t(n), 0x626f6f74ULL)});
            const std::size_t m = t.size();
            double sum = 0.0, sum2 = 0.0;
            for (int b = 0; b < bootstrap_replicates; ++b) {
                double st = 0.0, sw = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const std::size_t pick = std::size_t(rng.next_u64() % m);
                    st += t[pick];
                    sw += w[pick];
                }
                const double ratio = st / sw;
                sum += ratio;
                sum2 += ratio * ratio;
            }
            const double bmean = sum / bootstrap_replicates;
            p.mc_standard_error =
                std::sqrt(std::max(0.0, sum2 / bootstrap_replicates - bmean * bmean));
        }
        points.push_back(p);
    }
    return points;
}

std::vector<SimConfig> experiment_grid_paper(std::uint64_t master_seed, int replications) {
    struct Entry {
        int d, d1;
        double gamma;
    };
    static const Entry entries[] = {
        {2, 1, 9.0},   {2, 1, 19.0},  {2, 1, 99.0},
        {3, 1, 18.0},  {3, 1, 38.0},  {3, 1, 198.0},
        {3, 2, 4.5},   {3, 2, 9.5},   {3, 2, 49.5},
        {5, 1, 36.0},  {5, 1, 76.0},  {5, 1, 396.0},
        {5, 2, 13.5},  {5, 2, 28.5},  {5, 2, 148.5},
        {5, 3, 6.0},   {5, 3, 12.67}, {5, 3, 66.0},
        {5, 4, 2.25},  {5, 4, 4.75},  {5, 4, 24.75},
    };
    std::vector<SimConfig> grid;
    for (const Entry& e : entries) {
        SimConfig cfg;
        cfg.d = e.d;
        cfg.d1 = e.d1;
        cfg.gamma = e.gamma;
        cfg.replications = replications;
        cfg.master_seed = master_seed;
        if (e.d == 5)
            for (int n = 5; n <= 125; n += 5) cfg.n_grid.push_back(n);
        else
            for (int n = e.d; n <= 50; ++n) cfg.n_grid.push_back(n);
        grid.push_back(std::move(cfg));
    }
    return grid;
}

const char* kRecordsCsvHeader = "d,d1,gamma,n,replicate,loss_tyler,loss_sscm";
const char* kEfficiencyCsvHeader = "d,d1,gamma,n,re1,re2,are_asymptotic,mc_standard_error";

namespace {

void append_g17(std::string& line, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

}  // namespace

void write_records_csv(std::ostream& os, const SimConfig& config,
                       const std::vector<SimRecord>& records) {
    for (const SimRecord& r : records) {
        std::string line;
        line += std::to_string(config.d);
        line += ',';
        line += std::to_string(config.d1);
        line += ',';
        append_g17(line, config.gamma);
        line += ',';
        line += std::to_string(r.n);
        line += ',';
        line += std::to_string(r.replicate);
        line += ',';
        append_g17(line, r.loss_tyler);
        line += ',';
        append_g17(line, r.loss_sscm);
        line += '\n';
        os << line;
    }
}

void write_efficiency_csv(std::ostream& os, const SimConfig& config,
                          const std::vector<EfficiencyPoint>& points) {
    for (const EfficiencyPoint& p : points) {
        std::string line;
        line += std::to_string(config.d);
        line += ',';
        line += std::to_string(config.d1);
        line += ',';
        append_g17(line, config.gamma);
        line += ',';
        line += std::to_string(p.n);
        line += ',';
        append_g17(line, p.re1);
        line += ',';
        append_g17(line, p.re2);
        line += ',';
        append_g17(line, p.are_asymptotic);
        line += ',';
        append_g17(line, p.mc_standard_error);
        line += '\n';
        os << line;
    }
}

}  // namespace scatter
