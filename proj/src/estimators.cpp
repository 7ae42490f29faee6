#include "dris/estimators.hpp"
#include "dris/factorization.hpp"

#include <random>

namespace dris {

bool EstimateSet::finite() const {
    return g1_hat.allFinite() && g2_hat.allFinite() && h1_hat.allFinite() &&
           h2_hat.allFinite() && t_hat.allFinite();
}

ComplexMatrix build_sigma1(const ComplexMatrix& h1, const ComplexMatrix& h2,
                           const ComplexMatrix& t, const ComplexMatrix& theta2) {
    if (h1.cols() != t.cols() || h2.cols() != t.rows() || theta2.cols() != h2.cols())
        throw std::invalid_argument("build_sigma1: shape mismatch");
    return vstack({h1, khatri_rao(theta2, h2) * t});
}

ComplexMatrix build_sigma2(const ComplexMatrix& g2, const ComplexMatrix& g1,
                           const ComplexMatrix& t, const ComplexMatrix& theta1) {
    if (g2.rows() != t.rows() || g1.rows() != t.cols() || theta1.cols() != g1.rows())
        throw std::invalid_argument("build_sigma2: shape mismatch");
    return vstack({g2.transpose(),
                   khatri_rao(theta1, g1.transpose()) * t.transpose()});
}

ComplexMatrix estimate_t(const ComplexMatrix& y3_gen, const ComplexMatrix& g1_hat,
                         const ComplexMatrix& h2_hat, const TrainingDesign& tr) {
    ComplexMatrix f1 = khatri_rao(tr.theta1, g1_hat.transpose()); // I M_UE x M_S1
    ComplexMatrix f2 = khatri_rao(tr.theta2, h2_hat);             // J M_BS x M_S2
    PinvResult p2 = pinv_with_rank(f2, default_pinv_rtol(f2));
    PinvResult p1 = pinv_with_rank(f1, default_pinv_rtol(f1));
    // y3_gen = f2 * T * f1^T
    return p2.pinv * y3_gen * p1.pinv.transpose();
}

EstimateSet ckraft(const MeasurementBundle& bundle, const TrainingDesign& tr,
                   const SystemDims& dims) {
    // Left-filtered 3-mode unfoldings; exact only when the training
    // matrices have orthonormal columns (I >= M_S1, J >= M_S2).
    ComplexMatrix kr1 =
        (tr.theta1.adjoint() * mode_n_unfold(bundle.y1c, 3)).transpose();
    ComplexMatrix kr2 =
        (tr.theta2.adjoint() * mode_n_unfold(bundle.y2c, 3)).transpose();

    KrfResult f1 = krf(kr1, (dims.j_frames + 1) * dims.m_bs, dims.m_ue);
    KrfResult f2 = krf(kr2, (dims.i_frames + 1) * dims.m_ue, dims.m_bs);

    EstimateSet est;
    est.g1_hat = f1.B.transpose();                       // B fits G1^T
    est.h1_hat = f1.A.topRows(dims.m_bs);                // A fits Sigma1
    est.h2_hat = f2.B;
    est.g2_hat = f2.A.topRows(dims.m_ue).transpose();    // A fits Sigma2, top block G2^T
    est.t_hat = estimate_t(bundle.y3_gen, est.g1_hat, est.h2_hat, tr);
    return est;
}

namespace {

ComplexMatrix randn_cn(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    ComplexMatrix M(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            M(r, c) = Complex(n(rng), n(rng));
    return M;
}

double rel_change(double cur, double prev) {
    const double denom = std::max(prev, 1e-300);
    return std::abs(cur - prev) / denom;
}

} // namespace

std::pair<EstimateSet, AlsTrace> cals(const MeasurementBundle& bundle,
                                      const TrainingDesign& tr,
                                      const SystemDims& dims,
                                      const AlsConfig& cfg) {
    if (cfg.t_max < 1 || cfg.rel_change_tol < 0.0)
        throw std::invalid_argument("cals: invalid AlsConfig");

    EstimateSet est;
    if (cfg.init == AlsInit::CKraft) {
        est = ckraft(bundle, tr, dims);
    } else {
        std::mt19937_64 rng(cfg.seed ^ 0xa5c3u);
        est.h1_hat = randn_cn(dims.m_bs, dims.m_s1, rng);
        est.h2_hat = randn_cn(dims.m_bs, dims.m_s2, rng);
        est.g2_hat = randn_cn(dims.m_s2, dims.m_ue, rng);
        est.t_hat = randn_cn(dims.m_s2, dims.m_s1, rng);
        est.g1_hat = ComplexMatrix::Zero(dims.m_s1, dims.m_ue);
    }

    const ComplexMatrix y1_m1 = mode_n_unfold(bundle.y1c, 1);
    const ComplexMatrix yris1_m1 = mode_n_unfold(bundle.y_ris1, 1);
    const ComplexMatrix y2_m1 = mode_n_unfold(bundle.y2c, 1);
    const ComplexMatrix yris2_m1 = mode_n_unfold(bundle.y_ris2, 1);
    const ComplexMatrix yris2_m2 = mode_n_unfold(bundle.y_ris2, 2);

    // Joint LS objective: every update below is an exact coordinate
    // minimizer of this quantity given the other factors, so it is
    // non-increasing across all five steps of each iteration.
    const auto joint_residual = [&](const EstimateSet& e) {
        const ComplexMatrix kr1 = khatri_rao(tr.theta1, e.g1_hat.transpose());
        const ComplexMatrix kr2 = khatri_rao(tr.theta2, e.h2_hat);
        double s = (yris1_m1 - e.h1_hat * kr1.transpose()).squaredNorm();
        s += (yris2_m1 -
              e.h2_hat * khatri_rao(tr.theta2, e.g2_hat.transpose()).transpose())
                 .squaredNorm();
        s += (bundle.y3_gen - kr2 * e.t_hat * kr1.transpose()).squaredNorm();
        return std::sqrt(s);
    };

    AlsTrace trace;
    for (int t = 1; t <= cfg.t_max; ++t) {
        ComplexMatrix sigma1 =
            build_sigma1(est.h1_hat, est.h2_hat, est.t_hat, tr.theta2);
        est.g1_hat =
            (y1_m1 * pinv(khatri_rao(tr.theta1, sigma1).transpose())).transpose();
        est.h1_hat = yris1_m1 *
            pinv(khatri_rao(tr.theta1, est.g1_hat.transpose()).transpose());
        // Joint objective sampled after the first coupled tensor's updates.
        const double r1 = joint_residual(est);
        // Sigma2 uses the freshly updated G1 iterate so every step is an
        // exact coordinate LS minimizer of the joint fit.
        ComplexMatrix sigma2 =
            build_sigma2(est.g2_hat, est.g1_hat, est.t_hat, tr.theta1);
        est.h2_hat = y2_m1 * pinv(khatri_rao(tr.theta2, sigma2).transpose());
        est.g2_hat =
            (yris2_m2 * pinv(khatri_rao(tr.theta2, est.h2_hat).transpose())).transpose();
        est.t_hat = estimate_t(bundle.y3_gen, est.g1_hat, est.h2_hat, tr);
        // Joint objective sampled after the second coupled tensor's updates.
        const double r2 = joint_residual(est);
        trace.iterations_run = t;
        if (!trace.residual_y1.empty()) {
            const double p1 = trace.residual_y1.back(), p2 = trace.residual_y2.back();
            if (r1 > p1 * (1.0 + 1e-6) || r2 > p2 * (1.0 + 1e-6))
                trace.diverged = true;
            trace.residual_y1.push_back(r1);
            trace.residual_y2.push_back(r2);
            if (rel_change(r1, p1) < cfg.rel_change_tol &&
                rel_change(r2, p2) < cfg.rel_change_tol)
                break;
        } else {
            trace.residual_y1.push_back(r1);
            trace.residual_y2.push_back(r2);
        }
    }
    return {est, trace};
}

std::pair<EstimateSet, AlsTrace> baseline_uncoupled(const MeasurementBundle& bundle,
                                                    const TrainingDesign& tr,
                                                    const SystemDims& dims,
                                                    const AlsConfig& cfg) {
    if (cfg.t_max < 1 || cfg.rel_change_tol < 0.0)
        throw std::invalid_argument("baseline_uncoupled: invalid AlsConfig");

    EstimateSet est;
    std::mt19937_64 rng(cfg.seed ^ 0xb7e1u);
    est.h1_hat = randn_cn(dims.m_bs, dims.m_s1, rng);
    est.h2_hat = randn_cn(dims.m_bs, dims.m_s2, rng);
    est.g1_hat = ComplexMatrix::Zero(dims.m_s1, dims.m_ue);
    est.g2_hat = ComplexMatrix::Zero(dims.m_s2, dims.m_ue);

    const ComplexMatrix yris1_m1 = mode_n_unfold(bundle.y_ris1, 1);
    const ComplexMatrix yris1_m2 = mode_n_unfold(bundle.y_ris1, 2);
    const ComplexMatrix yris2_m1 = mode_n_unfold(bundle.y_ris2, 1);
    const ComplexMatrix yris2_m2 = mode_n_unfold(bundle.y_ris2, 2);

    AlsTrace trace;
    for (int t = 1; t <= cfg.t_max; ++t) {
        est.g1_hat =
            (yris1_m2 * pinv(khatri_rao(tr.theta1, est.h1_hat).transpose())).transpose();
        est.h1_hat = yris1_m1 *
            pinv(khatri_rao(tr.theta1, est.g1_hat.transpose()).transpose());
        est.g2_hat =
            (yris2_m2 * pinv(khatri_rao(tr.theta2, est.h2_hat).transpose())).transpose();
        est.h2_hat = yris2_m1 *
            pinv(khatri_rao(tr.theta2, est.g2_hat.transpose()).transpose());

        const double r1 =
            (yris1_m1 -
             est.h1_hat * khatri_rao(tr.theta1, est.g1_hat.transpose()).transpose()).norm();
        const double r2 =
            (yris2_m1 -
             est.h2_hat * khatri_rao(tr.theta2, est.g2_hat.transpose()).transpose()).norm();
        trace.iterations_run = t;
        if (!trace.residual_y1.empty()) {
            const double p1 = trace.residual_y1.back(), p2 = trace.residual_y2.back();
            if (r1 > p1 * (1.0 + 1e-6) || r2 > p2 * (1.0 + 1e-6))
                trace.diverged = true;
            trace.residual_y1.push_back(r1);
            trace.residual_y2.push_back(r2);
            if (rel_change(r1, p1) < cfg.rel_change_tol &&
                rel_change(r2, p2) < cfg.rel_change_tol)
                break;
        } else {
            trace.residual_y1.push_back(r1);
            trace.residual_y2.push_back(r2);
        }
    }
    est.t_hat = estimate_t(bundle.y3_gen, est.g1_hat, est.h2_hat, tr);
    return {est, trace};
}

} // namespace dris
