#include "dris/estimators.hpp"
#include "dris/evaluation.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace dris;
using test::random_matrix;
using test::rel_err;

namespace {

SystemDims reference_dims() {
    SystemDims d;
    d.m_bs = 4;
    d.m_ue = 2;
    d.m_s1 = 8;
    d.m_s2 = 6;
    d.i_frames = 8;
    d.j_frames = 6;
    d.k_pilots = 2;
    return d;
}

std::array<double, 3> cascade_nmse(const EstimateSet& est, const ChannelSet& ch) {
    return nmse(cascade(est), cascade(ch));
}

} // namespace

TEST_CASE("build_sigma blocks") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 3);
    TrainingDesign tr = gen_training(d);

    ComplexMatrix s1 = build_sigma1(ch.h1, ch.h2,
                                    ComplexMatrix::Zero(d.m_s2, d.m_s1), tr.theta2);
    CHECK(s1.rows() == (d.j_frames + 1) * d.m_bs);
    CHECK(s1.cols() == d.m_s1);
    CHECK(s1.topRows(d.m_bs) == ch.h1);
    CHECK(s1.bottomRows(d.j_frames * d.m_bs).norm() == 0.0);

    ComplexMatrix s2 = build_sigma2(ch.g2, ch.g1, ch.t, tr.theta1);
    CHECK(s2.rows() == (d.i_frames + 1) * d.m_ue);
    CHECK(s2.cols() == d.m_s2);
    CHECK(s2.topRows(d.m_ue) == ch.g2.transpose());

    CHECK_THROWS_AS(build_sigma1(ch.h1, ch.h2, ch.t.transpose(), tr.theta2),
                    std::invalid_argument);
}

TEST_CASE("ckraft recovers all cascades exactly without noise") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 42);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    EstimateSet est = ckraft(b, tr, d);
    auto e = cascade_nmse(est, ch);
    CHECK(e[0] < 1e-18);
    CHECK(e[1] < 1e-18);
    CHECK(e[2] < 1e-18);
}

TEST_CASE("ckraft degrades when I < M_S1") {
    SystemDims d = reference_dims();
    d.i_frames = d.m_s1 - 2;
    ChannelSet ch = gen_channels(d, 43);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    EstimateSet est = ckraft(b, tr, d);
    auto e = cascade_nmse(est, ch);
    CHECK(e[0] > 1e-6);
}

TEST_CASE("ckraft on an all-zero bundle returns zero estimates") {
    SystemDims d = reference_dims();
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b;
    b.y_ris1 = Tensor3(d.m_bs, d.m_ue, d.i_frames);
    b.y_ris2 = Tensor3(d.m_bs, d.m_ue, d.j_frames);
    b.y1c = Tensor3(d.m_ue, (d.j_frames + 1) * d.m_bs, d.i_frames);
    b.y2c = Tensor3(d.m_bs, (d.i_frames + 1) * d.m_ue, d.j_frames);
    b.y3_gen = ComplexMatrix::Zero(d.j_frames * d.m_bs, d.i_frames * d.m_ue);
    EstimateSet est = ckraft(b, tr, d);
    CHECK(est.finite());
    CHECK(est.g1_hat.norm() == 0.0);
    CHECK(est.t_hat.norm() == 0.0);
}

TEST_CASE("estimate_t inverts the bilinear map") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 7);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    ComplexMatrix t_hat = estimate_t(b.y3_gen, ch.g1, ch.h2, tr);
    CHECK(rel_err(t_hat, ch.t) < 1e-11);
}

TEST_CASE("estimate_t cancels diagonal scale ambiguities in the cascade") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 9);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);

    std::mt19937_64 rng(77);
    ComplexVector d1 = random_matrix(d.m_s1, 1, rng).col(0);
    ComplexVector d2 = random_matrix(d.m_s2, 1, rng).col(0);
    ComplexMatrix g1s = d1.asDiagonal() * ch.g1;       // Delta1 G1
    ComplexMatrix h2s = ch.h2 * d2.asDiagonal();       // H2 Delta2
    ComplexMatrix t_hat = estimate_t(b.y3_gen, g1s, h2s, tr);
    CHECK(rel_err(h2s * t_hat * g1s, ch.h2 * ch.t * ch.g1) < 1e-10);
}

TEST_CASE("cals with random init converges to exact recovery") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 101);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    AlsConfig cfg;
    cfg.t_max = 50;
    cfg.init = AlsInit::Random;
    cfg.seed = 1;
    auto [est, trace] = cals(b, tr, d, cfg);
    auto e = cascade_nmse(est, ch);
    CHECK(e[0] < 1e-10);
    CHECK(e[1] < 1e-10);
    CHECK(e[2] < 1e-10);
    CHECK(trace.iterations_run >= 1);
}

TEST_CASE("cals succeeds below the closed-form identifiability threshold") {
    SystemDims d = reference_dims();
    d.i_frames = 5;
    d.j_frames = 3;
    ChannelSet ch = gen_channels(d, 103);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    AlsConfig cfg;
    cfg.t_max = 100;
    cfg.init = AlsInit::Random;
    cfg.seed = 9;
    auto [est, trace] = cals(b, tr, d, cfg);
    auto e = cascade_nmse(est, ch);
    CHECK(e[0] < 1e-8);
    CHECK(e[1] < 1e-8);
    CHECK(e[2] < 1e-8);
}

TEST_CASE("cals warm start from ckraft keeps residuals at the closed-form level") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 107);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {1e-2, 11}, d);

    AlsConfig warm;
    warm.t_max = 5;
    warm.init = AlsInit::CKraft;
    auto [est_w, trace_w] = cals(b, tr, d, warm);
    // reconstruction from the C-KRAFT solution itself
    EstimateSet ck = ckraft(b, tr, d);
    const ComplexMatrix kr1 = khatri_rao(tr.theta1, ck.g1_hat.transpose());
    const ComplexMatrix kr2 = khatri_rao(tr.theta2, ck.h2_hat);
    double r_ck2 = (mode_n_unfold(b.y_ris1, 1) -
                    ck.h1_hat * kr1.transpose()).squaredNorm();
    r_ck2 += (mode_n_unfold(b.y_ris2, 1) -
              ck.h2_hat * khatri_rao(tr.theta2, ck.g2_hat.transpose()).transpose())
                 .squaredNorm();
    r_ck2 += (b.y3_gen - kr2 * ck.t_hat * kr1.transpose()).squaredNorm();
    const double r_ck = std::sqrt(r_ck2);
    CHECK(trace_w.residual_y1.front() <= r_ck * (1.0 + 1e-9));
    for (size_t t = 1; t < trace_w.residual_y1.size(); ++t)
        CHECK(trace_w.residual_y1[t] <=
              trace_w.residual_y1[t - 1] * (1.0 + 1e-9));
}

TEST_CASE("cals residual traces are monotone on noisy data") {
    SystemDims d = reference_dims();
    for (int rep = 0; rep < 10; ++rep) {
        ChannelSet ch = gen_channels(d, 200 + rep);
        TrainingDesign tr = gen_training(d);
        MeasurementBundle b =
            run_protocol(ch, tr, {0.01, static_cast<std::uint64_t>(rep)}, d);
        AlsConfig cfg;
        cfg.t_max = 15;
        cfg.seed = rep;
        auto [est, trace] = cals(b, tr, d, cfg);
        for (size_t t = 1; t < trace.residual_y1.size(); ++t) {
            CHECK(trace.residual_y1[t] <= trace.residual_y1[t - 1] * (1.0 + 1e-9));
            CHECK(trace.residual_y2[t] <= trace.residual_y2[t - 1] * (1.0 + 1e-9));
        }
        CHECK_FALSE(trace.diverged);
    }
}

TEST_CASE("baseline converges when its stricter conditions hold") {
    SystemDims d = reference_dims();  // I=8 >= max{4,2,2}, J=6 >= max{3,2,2}
    ChannelSet ch = gen_channels(d, 301);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    AlsConfig cfg;
    cfg.t_max = 100;
    cfg.seed = 3;
    auto [est, trace] = baseline_uncoupled(b, tr, d, cfg);
    auto e = cascade_nmse(est, ch);
    CHECK(e[0] < 1e-10);
    CHECK(e[1] < 1e-10);
    CHECK(e[2] < 1e-10);
}

TEST_CASE("coupled and uncoupled agree on the RIS-2 cascade without noise") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 311);
    TrainingDesign tr = gen_training(d);
    MeasurementBundle b = run_protocol(ch, tr, {0.0, 0}, d);
    AlsConfig cfg;
    cfg.t_max = 100;
    cfg.seed = 4;
    auto [cest, ct] = cals(b, tr, d, cfg);
    auto [uest, ut] = baseline_uncoupled(b, tr, d, cfg);
    ComplexMatrix p2c = cest.h2_hat * cest.g2_hat;
    ComplexMatrix p2u = uest.h2_hat * uest.g2_hat;
    CHECK(rel_err(p2c, p2u) < 1e-9);
}

TEST_CASE("scaling ambiguity leaves every cascade unchanged") {
    SystemDims d = reference_dims();
    ChannelSet ch = gen_channels(d, 401);
    EstimateSet est;
    est.g1_hat = ch.g1;
    est.g2_hat = ch.g2;
    est.h1_hat = ch.h1;
    est.h2_hat = ch.h2;
    est.t_hat = ch.t;

    std::mt19937_64 rng(5);
    ComplexVector d1 = random_matrix(d.m_s1, 1, rng).col(0);
    EstimateSet scaled = est;
    scaled.g1_hat = d1.asDiagonal() * est.g1_hat;
    scaled.h1_hat = est.h1_hat * d1.cwiseInverse().asDiagonal();
    scaled.t_hat = est.t_hat * d1.cwiseInverse().asDiagonal();

    CascadeSet a = cascade(est), bb = cascade(scaled);
    CHECK(rel_err(bb.p1, a.p1) < 1e-12);
    CHECK(rel_err(bb.p2, a.p2) < 1e-12);
    CHECK(rel_err(bb.p3, a.p3) < 1e-12);
}
