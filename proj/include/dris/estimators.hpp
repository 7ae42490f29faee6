#ifndef DRIS_ESTIMATORS_HPP
#define DRIS_ESTIMATORS_HPP

#include "dris/protocol.hpp"

#include <string>
#include <vector>

namespace dris {

struct EstimateSet {
    ComplexMatrix g1_hat;
    ComplexMatrix g2_hat;
    ComplexMatrix h1_hat;
    ComplexMatrix h2_hat;
    ComplexMatrix t_hat;

    bool finite() const;
};

enum class AlsInit { CKraft, Random };

struct AlsConfig {
    int t_max = 10;
    AlsInit init = AlsInit::Random;
    double rel_change_tol = 1e-12;
    std::uint64_t seed = 0;
};

struct AlsTrace {
    // Joint reconstruction residual (all measured tensors), sampled after
    // the first coupled tensor's updates and again at iteration end. Both
    // sequences are non-increasing: every update is an exact coordinate
    // least-squares minimizer of the joint objective.
    std::vector<double> residual_y1;
    std::vector<double> residual_y2;
    int iterations_run = 0;
    bool diverged = false;
    std::vector<std::string> warnings;
};

/// Sigma1 = [H1; (Theta2 kr H2) T], shape (J+1) M_BS x M_S1.
ComplexMatrix build_sigma1(const ComplexMatrix& h1, const ComplexMatrix& h2,
                           const ComplexMatrix& t, const ComplexMatrix& theta2);

/// Sigma2 = [G2^T; (Theta1 kr G1^T) T^T], shape (I+1) M_UE x M_S2.
ComplexMatrix build_sigma2(const ComplexMatrix& g2, const ComplexMatrix& g1,
                           const ComplexMatrix& t, const ComplexMatrix& theta1);

/// Closed-form coupled Khatri-Rao factorization estimator.
EstimateSet ckraft(const MeasurementBundle& bundle, const TrainingDesign& tr,
                   const SystemDims& dims);

/// Iterative coupled alternating least squares estimator.
std::pair<EstimateSet, AlsTrace> cals(const MeasurementBundle& bundle,
                                      const TrainingDesign& tr,
                                      const SystemDims& dims,
                                      const AlsConfig& cfg);

/// Bilinear LS estimate of the inter-RIS channel from the generalized
/// unfolding of the double-reflection measurements.
ComplexMatrix estimate_t(const ComplexMatrix& y3_gen, const ComplexMatrix& g1_hat,
                         const ComplexMatrix& h2_hat, const TrainingDesign& tr);

/// Per-component ALS on the single-reflection tensors only; no coupling
/// to the double-reflection measurements except for the final T step.
std::pair<EstimateSet, AlsTrace> baseline_uncoupled(const MeasurementBundle& bundle,
                                                    const TrainingDesign& tr,
                                                    const SystemDims& dims,
                                                    const AlsConfig& cfg);

} // namespace dris

#endif
