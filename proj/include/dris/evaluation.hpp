#ifndef DRIS_EVALUATION_HPP
#define DRIS_EVALUATION_HPP

#include "dris/estimators.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace dris {

enum class Estimator { CKraft, CAlsRandom, CAlsCkraftInit, BaselineUncoupled };

std::string estimator_name(Estimator e);

/// Cascaded channels P1 = H1 G1, P2 = H2 G2, P3 = H2 T G1 (all M_BS x M_UE).
struct CascadeSet {
    ComplexMatrix p1;
    ComplexMatrix p2;
    ComplexMatrix p3;
};

CascadeSet cascade(const ChannelSet& ch);
CascadeSet cascade(const EstimateSet& est);

/// Per-component squared-Frobenius error ratios ||P_hat - P||^2 / ||P||^2.
std::array<double, 3> nmse(const CascadeSet& est, const CascadeSet& truth);

struct IdentifiabilityVerdict {
    bool satisfied = true;
    std::vector<std::string> violated;  // failed inequalities, named
};

IdentifiabilityVerdict check_identifiability(const SystemDims& dims, Estimator e);

struct NmseSummary {
    double median = 0.0;
    double mean = 0.0;
    double ratio_of_sums = 0.0;  // sum of error norms over sum of truth norms
};

struct NmseReport {
    SystemDims dims;
    Estimator estimator = Estimator::CKraft;
    std::uint64_t seed = 0;
    std::vector<double> snr_grid_db;
    // samples[snr][component] = per-trial NMSE ratios
    std::vector<std::array<std::vector<double>, 3>> samples;
    std::vector<std::array<NmseSummary, 3>> summary;
    std::vector<int> failures;  // non-finite trials per SNR point, excluded
    int trials = 0;
};

/// Fresh channels and noise per (snr, trial); per-trial RNG substreams are
/// derived from (seed, snr index, trial index) so results are
/// schedule-independent and reproducible.
NmseReport run_monte_carlo(const SystemDims& dims,
                           const std::vector<double>& snr_grid_db, int trials,
                           Estimator estimator, const AlsConfig& cfg,
                           std::uint64_t seed);

/// CSV rows: estimator, snr_db, component, statistic, value, trials, failures.
void write_csv(std::ostream& os, const std::vector<NmseReport>& reports,
               bool header = true);

double median(std::vector<double> v);

} // namespace dris

#endif
