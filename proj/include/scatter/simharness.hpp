#ifndef SCATTER_SIMHARNESS_HPP
#define SCATTER_SIMHARNESS_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace scatter {

// One finite-sample efficiency experiment: normal samples under the scatter
// diag(gamma, ..., gamma, 1, ..., 1) with d1 leading entries, eigenprojection
// losses of Tyler's estimate versus the SSCM, both about the known center 0.
struct SimConfig {
    int d = 2;
    int d1 = 1;
    double gamma = 9.0;            // larger-eigenvalue ratio, > 1
    std::vector<int> n_grid;       // sample sizes, each >= d
    int replications = 10000;
    std::uint64_t master_seed = 0;

    double rho() const { return 1.0 / std::sqrt(gamma); }
    void validate() const;
};

// Squared-principal-angle losses for one replicate.
struct SimRecord {
    int n = 0;
    int replicate = 0;
    double loss_tyler = 0.0;  // T_n
    double loss_sscm = 0.0;   // Omega_n
};

struct EfficiencyPoint {
    int n = 0;
    double re1 = 0.0;               // mean(T_n)/mean(Omega_n)
    double re2 = 0.0;               // median(T_n)/median(Omega_n)
    double are_asymptotic = 0.0;    // closed-form reference
    double mc_standard_error = 0.0; // bootstrap SE of re1
};

struct ExperimentResult {
    std::vector<SimRecord> records;
    long excluded = 0;  // replicates dropped because an estimator failed
};

// Runs the experiment. Replicates are independent work items on
// per-replicate random streams, so any worker count (0 = one per hardware
// thread) produces identical records. Fails if more than 0.1% of the
// replicates had to be excluded.
ExperimentResult run_experiment(const SimConfig& config, unsigned workers = 0);

// Aggregates records into one efficiency point per sample size. Needs at
// least two records per n. bootstrap_replicates controls the SE estimate.
std::vector<EfficiencyPoint> relative_efficiency(const SimConfig& config,
                                                 const std::vector<SimRecord>& records,
                                                 int bootstrap_replicates = 200);

// The full experiment grid reported with the method: 21 (d, d1, gamma)
// settings in dimensions 2, 3 and 5, where gamma makes the leading
// eigenspace explain 90%, 95% and 99% of the total variance. Sample sizes
// run d..50 for d = 2, 3 and 5, 10, ..., 125 for d = 5.
std::vector<SimConfig> experiment_grid_paper(std::uint64_t master_seed = 0,
                                             int replications = 10000);

// CSV emission (single header row, then one line per record/point).
void write_records_csv(std::ostream& os, const SimConfig& config,
                       const std::vector<SimRecord>& records);
void write_efficiency_csv(std::ostream& os, const SimConfig& config,
                          const std::vector<EfficiencyPoint>& points);
extern const char* kRecordsCsvHeader;
extern const char* kEfficiencyCsvHeader;

}  // namespace scatter

#endif
