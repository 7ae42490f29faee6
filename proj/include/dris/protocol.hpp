#ifndef DRIS_PROTOCOL_HPP
#define DRIS_PROTOCOL_HPP

#include "dris/tensor.hpp"

#include <cstdint>

namespace dris {

struct SystemDims {
    Eigen::Index m_bs = 4;   // BS antennas
    Eigen::Index m_ue = 2;   // UE antennas
    Eigen::Index m_s1 = 8;   // RIS 1 elements
    Eigen::Index m_s2 = 6;   // RIS 2 elements
    Eigen::Index i_frames = 8;
    Eigen::Index j_frames = 6;
    Eigen::Index k_pilots = 2;

    void validate() const;
};

/// Ground-truth channels: g1 UE->RIS1, g2 UE->RIS2, h1 RIS1->BS,
/// h2 RIS2->BS, t RIS1->RIS2.
struct ChannelSet {
    ComplexMatrix g1;  // m_s1 x m_ue
    ComplexMatrix g2;  // m_s2 x m_ue
    ComplexMatrix h1;  // m_bs x m_s1
    ComplexMatrix h2;  // m_bs x m_s2
    ComplexMatrix t;   // m_s2 x m_s1
};

struct TrainingDesign {
    ComplexMatrix x;       // m_ue x k, orthonormal rows
    ComplexMatrix theta1;  // i_frames x m_s1
    ComplexMatrix theta2;  // j_frames x m_s2
};

struct NoiseModel {
    double sigma2 = 0.0;   // per-entry variance at the raw receive stage
    std::uint64_t seed = 0;
};

/// Measurement tensors consumed by the estimators.
struct MeasurementBundle {
    Tensor3 y_ris1;        // m_bs x m_ue x I
    Tensor3 y_ris2;        // m_bs x m_ue x J
    Tensor3 y1c;           // m_ue x (J+1) m_bs x I
    Tensor3 y2c;           // m_bs x (I+1) m_ue x J
    ComplexMatrix y3_gen;  // J m_bs x I m_ue
};

/// i.i.d. CN(0,1) channel entries, reproducible from seed.
ChannelSet gen_channels(const SystemDims& dims, std::uint64_t seed);

/// Truncated unitary-DFT pilots and RIS training matrices.
TrainingDesign gen_training(const SystemDims& dims);

/// Right-filtered measurement Y_{i,j} for beam states s1, s2 in {0,1}
/// (state 1 negates the corresponding phase vector). i, j are 1-based.
/// Noise is drawn deterministically from (noise.seed, i, j, s1, s2).
ComplexMatrix raw_measurement(const ChannelSet& ch, const TrainingDesign& tr,
                              Eigen::Index i, Eigen::Index j, int s1, int s2,
                              const NoiseModel& noise);

/// Stacks the per-i transposed single-reflection slices next to the
/// transposed per-(i,j) double-reflection blocks; frontal slice i equals
/// G1^T diag(theta1_i) Sigma1^T in the noiseless case.
Tensor3 assemble_coupled_y1(const std::vector<ComplexMatrix>& yris1_slices,
                            const std::vector<ComplexMatrix>& ydd_blocks,
                            const SystemDims& dims);

/// Mirror of assemble_coupled_y1: frontal slice j = H2 diag(theta2_j) Sigma2^T.
Tensor3 assemble_coupled_y2(const std::vector<ComplexMatrix>& yris2_slices,
                            const std::vector<ComplexMatrix>& ydd_blocks,
                            const SystemDims& dims);

/// Runs the three-stage State-0/State-1 training over the (i,j) grid,
/// combines the stages, halves them and assembles all bundle members.
/// average_ris1 averages the j-independent (resp. i-independent)
/// single-reflection combinations over the swept index instead of using
/// the first one.
MeasurementBundle run_protocol(const ChannelSet& ch, const TrainingDesign& tr,
                               const NoiseModel& noise, const SystemDims& dims,
                               bool average_single_reflection = false);

/// ydd block index helper: blocks are stored with i slower, j faster (1-based i, j).
inline Eigen::Index ydd_index(Eigen::Index i, Eigen::Index j, const SystemDims& dims) {
    return (i - 1) * dims.j_frames + (j - 1);
}

} // namespace dris

#endif
