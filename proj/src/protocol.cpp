#include "dris/protocol.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dris {

void SystemDims::validate() const {
    if (m_bs < 1 || m_ue < 1 || m_s1 < 1 || m_s2 < 1 || k_pilots < 1)
        throw std::invalid_argument("SystemDims: all counts must be >= 1");
    if (k_pilots < m_ue)
        throw std::invalid_argument("SystemDims: K must be >= M_UE");
    if (i_frames < 2)
        throw std::invalid_argument("SystemDims: I must be >= 2");
    if (j_frames < 2)
        throw std::invalid_argument("SystemDims: J must be >= 2");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}

ComplexMatrix randn_cn(Eigen::Index rows, Eigen::Index cols, double variance,
                       std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    ComplexMatrix M(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            M(r, c) = Complex(n(rng), n(rng));
    return M;
}

/// N-point unitary DFT matrix.
ComplexMatrix dft_unitary(Eigen::Index n) {
    ComplexMatrix F(n, n);
    const double w = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            F(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                                 w * static_cast<double>(r * c));
    return F;
}

ComplexMatrix truncated_dft(Eigen::Index rows, Eigen::Index cols) {
    // rows >= cols: orthonormal columns; rows < cols: orthonormal rows.
    if (rows >= cols)
        return dft_unitary(rows).leftCols(cols);
    return dft_unitary(cols).topRows(rows);
}

} // namespace

ChannelSet gen_channels(const SystemDims& dims, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    ChannelSet ch;
    ch.g1 = randn_cn(dims.m_s1, dims.m_ue, 1.0, rng);
    ch.g2 = randn_cn(dims.m_s2, dims.m_ue, 1.0, rng);
    ch.h1 = randn_cn(dims.m_bs, dims.m_s1, 1.0, rng);
    ch.h2 = randn_cn(dims.m_bs, dims.m_s2, 1.0, rng);
    ch.t = randn_cn(dims.m_s2, dims.m_s1, 1.0, rng);
    return ch;
}

TrainingDesign gen_training(const SystemDims& dims) {
    if (dims.k_pilots < dims.m_ue)
        throw std::invalid_argument("gen_training: K must be >= M_UE");
    TrainingDesign tr;
    tr.x = dft_unitary(dims.k_pilots).topRows(dims.m_ue);
    tr.theta1 = truncated_dft(dims.i_frames, dims.m_s1);
    tr.theta2 = truncated_dft(dims.j_frames, dims.m_s2);
    return tr;
}

ComplexMatrix raw_measurement(const ChannelSet& ch, const TrainingDesign& tr,
                              Eigen::Index i, Eigen::Index j, int s1, int s2,
                              const NoiseModel& noise) {
    const Eigen::Index I = tr.theta1.rows(), J = tr.theta2.rows();
    if (i < 1 || i > I || j < 1 || j > J)
        throw std::out_of_range("raw_measurement: frame index out of range");
    ComplexVector th1 = tr.theta1.row(i - 1).transpose();
    ComplexVector th2 = tr.theta2.row(j - 1).transpose();
    if (s1) th1 = -th1;
    if (s2) th2 = -th2;

    ComplexMatrix Y = ch.h2 * th2.asDiagonal() * ch.t * th1.asDiagonal() * ch.g1
                    + ch.h1 * th1.asDiagonal() * ch.g1
                    + ch.h2 * th2.asDiagonal() * ch.g2;
    if (noise.sigma2 > 0.0) {
        const std::uint64_t stage = static_cast<std::uint64_t>(s1 * 2 + s2);
        std::mt19937_64 rng(mix(mix(noise.seed, stage),
                                mix(static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(j) + 0x51ed2701ULL)));
        ComplexMatrix nbar = randn_cn(Y.rows(), tr.x.cols(), noise.sigma2, rng);
        Y += nbar * tr.x.adjoint();
    }
    return Y;
}

Tensor3 assemble_coupled_y1(const std::vector<ComplexMatrix>& yris1_slices,
                            const std::vector<ComplexMatrix>& ydd_blocks,
                            const SystemDims& dims) {
    const Eigen::Index I = dims.i_frames, J = dims.j_frames;
    if (static_cast<Eigen::Index>(yris1_slices.size()) != I ||
        static_cast<Eigen::Index>(ydd_blocks.size()) != I * J)
        throw std::invalid_argument("assemble_coupled_y1: slice count mismatch");
    Tensor3 Y(dims.m_ue, (J + 1) * dims.m_bs, I);
    std::vector<ComplexMatrix> row(J + 1);
    for (Eigen::Index i = 1; i <= I; ++i) {
        row[0] = yris1_slices[i - 1].transpose();
        for (Eigen::Index j = 1; j <= J; ++j)
            row[j] = ydd_blocks[ydd_index(i, j, dims)].transpose();
        Y.set_slice(i - 1, hstack(row));
    }
    return Y;
}

Tensor3 assemble_coupled_y2(const std::vector<ComplexMatrix>& yris2_slices,
                            const std::vector<ComplexMatrix>& ydd_blocks,
                            const SystemDims& dims) {
    const Eigen::Index I = dims.i_frames, J = dims.j_frames;
    if (static_cast<Eigen::Index>(yris2_slices.size()) != J ||
        static_cast<Eigen::Index>(ydd_blocks.size()) != I * J)
        throw std::invalid_argument("assemble_coupled_y2: slice count mismatch");
    Tensor3 Y(dims.m_bs, (I + 1) * dims.m_ue, J);
    std::vector<ComplexMatrix> row(I + 1);
    for (Eigen::Index j = 1; j <= J; ++j) {
        row[0] = yris2_slices[j - 1];
        for (Eigen::Index i = 1; i <= I; ++i)
            row[i] = ydd_blocks[ydd_index(i, j, dims)];
        Y.set_slice(j - 1, hstack(row));
    }
    return Y;
}

MeasurementBundle run_protocol(const ChannelSet& ch, const TrainingDesign& tr,
                               const NoiseModel& noise, const SystemDims& dims,
                               bool average_single_reflection) {
    const Eigen::Index I = dims.i_frames, J = dims.j_frames;

    // Stage grids: state (0,0), (0,1) and (1,0) measurements over (i,j).
    std::vector<ComplexMatrix> y00(I * J), y01(I * J), y10(I * J);
    for (Eigen::Index i = 1; i <= I; ++i) {
        for (Eigen::Index j = 1; j <= J; ++j) {
            const Eigen::Index at = ydd_index(i, j, dims);
            y00[at] = raw_measurement(ch, tr, i, j, 0, 0, noise);
            y01[at] = raw_measurement(ch, tr, i, j, 0, 1, noise);
            y10[at] = raw_measurement(ch, tr, i, j, 1, 0, noise);
        }
    }

    // Combine and halve so the noiseless CP identities hold without a
    // factor 2. The RIS-1 combination is j-independent in its signal part
    // (and the RIS-2 one i-independent); by default the first sweep is used.
    std::vector<ComplexMatrix> ris1(I), ris2(J), ydd(I * J);
    for (Eigen::Index i = 1; i <= I; ++i) {
        ComplexMatrix acc = y00[ydd_index(i, 1, dims)] + y01[ydd_index(i, 1, dims)];
        if (average_single_reflection) {
            for (Eigen::Index j = 2; j <= J; ++j)
                acc += y00[ydd_index(i, j, dims)] + y01[ydd_index(i, j, dims)];
            acc /= static_cast<double>(J);
        }
        ris1[i - 1] = acc / 2.0;
    }
    for (Eigen::Index j = 1; j <= J; ++j) {
        ComplexMatrix acc = y00[ydd_index(1, j, dims)] + y10[ydd_index(1, j, dims)];
        if (average_single_reflection) {
            for (Eigen::Index i = 2; i <= I; ++i)
                acc += y00[ydd_index(i, j, dims)] + y10[ydd_index(i, j, dims)];
            acc /= static_cast<double>(I);
        }
        ris2[j - 1] = acc / 2.0;
    }
    for (Eigen::Index i = 1; i <= I; ++i)
        for (Eigen::Index j = 1; j <= J; ++j) {
            const Eigen::Index at = ydd_index(i, j, dims);
            ydd[at] = (-y10[at] - y01[at]) / 2.0;
        }

    MeasurementBundle b;
    b.y_ris1 = Tensor3(dims.m_bs, dims.m_ue, I);
    for (Eigen::Index i = 0; i < I; ++i)
        b.y_ris1.set_slice(i, ris1[i]);
    b.y_ris2 = Tensor3(dims.m_bs, dims.m_ue, J);
    for (Eigen::Index j = 0; j < J; ++j)
        b.y_ris2.set_slice(j, ris2[j]);
    b.y1c = assemble_coupled_y1(ris1, ydd, dims);
    b.y2c = assemble_coupled_y2(ris2, ydd, dims);

    b.y3_gen = ComplexMatrix(J * dims.m_bs, I * dims.m_ue);
    for (Eigen::Index i = 1; i <= I; ++i)
        for (Eigen::Index j = 1; j <= J; ++j)
            b.y3_gen.block((j - 1) * dims.m_bs, (i - 1) * dims.m_ue,
                           dims.m_bs, dims.m_ue) = ydd[ydd_index(i, j, dims)];
    return b;
}

} // namespace dris
