#include "dris/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dris {

std::string estimator_name(Estimator e) {
    switch (e) {
    case Estimator::CKraft: return "ckraft";
    case Estimator::CAlsRandom: return "cals_random";
    case Estimator::CAlsCkraftInit: return "cals_ckraft_init";
    case Estimator::BaselineUncoupled: return "baseline_uncoupled";
    }
    return "unknown";
}

CascadeSet cascade(const ChannelSet& ch) {
    return {ch.h1 * ch.g1, ch.h2 * ch.g2, ch.h2 * ch.t * ch.g1};
}

CascadeSet cascade(const EstimateSet& est) {
    return {est.h1_hat * est.g1_hat, est.h2_hat * est.g2_hat,
            est.h2_hat * est.t_hat * est.g1_hat};
}

std::array<double, 3> nmse(const CascadeSet& est, const CascadeSet& truth) {
    auto one = [](const ComplexMatrix& e, const ComplexMatrix& t) {
        const double denom = t.squaredNorm();
        if (denom == 0.0)
            throw std::invalid_argument("nmse: zero truth cascade");
        return (e - t).squaredNorm() / denom;
    };
    return {one(est.p1, truth.p1), one(est.p2, truth.p2), one(est.p3, truth.p3)};
}

namespace {

Eigen::Index ceil_div(Eigen::Index a, Eigen::Index b) { return (a + b - 1) / b; }

void require(IdentifiabilityVerdict& v, bool ok, const std::string& ineq) {
    if (!ok) {
        v.satisfied = false;
        v.violated.push_back(ineq);
    }
}

} // namespace

IdentifiabilityVerdict check_identifiability(const SystemDims& d, Estimator e) {
    IdentifiabilityVerdict v;
    require(v, d.i_frames >= 2, "I >= 2");
    require(v, d.j_frames >= 2, "J >= 2");
    require(v, d.k_pilots >= d.m_ue, "K >= M_UE");
    switch (e) {
    case Estimator::CKraft:
        require(v, d.i_frames >= d.m_s1, "I >= M_S1");
        require(v, d.j_frames >= d.m_s2, "J >= M_S2");
        break;
    case Estimator::CAlsRandom:
    case Estimator::CAlsCkraftInit:
        require(v,
                d.i_frames >= std::max(ceil_div(d.m_s1, d.m_ue),
                                       ceil_div(d.m_s1, (d.j_frames + 1) * d.m_bs)),
                "I >= max{ceil(M_S1/M_UE), ceil(M_S1/((J+1)M_BS))}");
        require(v,
                d.j_frames >= std::max(ceil_div(d.m_s2, (d.i_frames + 1) * d.m_ue),
                                       ceil_div(d.m_s2, d.m_bs)),
                "J >= max{ceil(M_S2/((I+1)M_UE)), ceil(M_S2/M_BS)}");
        break;
    case Estimator::BaselineUncoupled:
        require(v,
                d.i_frames >= std::max({ceil_div(d.m_s1, d.m_ue),
                                        ceil_div(d.m_s1, d.m_bs),
                                        Eigen::Index(2)}),
                "I >= max{ceil(M_S1/M_UE), ceil(M_S1/M_BS), 2}");
        require(v,
                d.j_frames >= std::max({ceil_div(d.m_s2, d.m_ue),
                                        ceil_div(d.m_s2, d.m_bs),
                                        Eigen::Index(2)}),
                "J >= max{ceil(M_S2/M_UE), ceil(M_S2/M_BS), 2}");
        break;
    }
    // The bilinear estimate of the inter-RIS channel is common to all schemes.
    require(v, d.i_frames >= ceil_div(d.m_s1, d.m_ue), "I >= ceil(M_S1/M_UE)");
    require(v, d.j_frames >= ceil_div(d.m_s2, d.m_bs), "J >= ceil(M_S2/M_BS)");
    return v;
}

double median(std::vector<double> v) {
    if (v.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

NmseReport run_monte_carlo(const SystemDims& dims,
                           const std::vector<double>& snr_grid_db, int trials,
                           Estimator estimator, const AlsConfig& cfg,
                           std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    dims.validate();
    const TrainingDesign tr = gen_training(dims);

    NmseReport rep;
    rep.dims = dims;
    rep.estimator = estimator;
    rep.seed = seed;
    rep.snr_grid_db = snr_grid_db;
    rep.trials = trials;
    rep.samples.resize(snr_grid_db.size());
    rep.summary.resize(snr_grid_db.size());
    rep.failures.assign(snr_grid_db.size(), 0);

    for (size_t s = 0; s < snr_grid_db.size(); ++s) {
        const double sigma2 = std::pow(10.0, -snr_grid_db[s] / 10.0);
        std::array<double, 3> err_sum{0, 0, 0}, truth_sum{0, 0, 0};
        for (int trial = 0; trial < trials; ++trial) {
            const std::uint64_t sub =
                seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(s) * 1000003ULL +
                                                static_cast<std::uint64_t>(trial) + 1ULL);
            const ChannelSet ch = gen_channels(dims, sub);
            const NoiseModel noise{sigma2, sub ^ 0x5bf0a8b1ULL};
            const MeasurementBundle bundle =
                run_protocol(ch, tr, noise, dims);

            EstimateSet est;
            AlsConfig run_cfg = cfg;
            run_cfg.seed = sub ^ 0x2545f491ULL;
            switch (estimator) {
            case Estimator::CKraft:
                est = ckraft(bundle, tr, dims);
                break;
            case Estimator::CAlsRandom:
                run_cfg.init = AlsInit::Random;
                est = cals(bundle, tr, dims, run_cfg).first;
                break;
            case Estimator::CAlsCkraftInit:
                run_cfg.init = AlsInit::CKraft;
                est = cals(bundle, tr, dims, run_cfg).first;
                break;
            case Estimator::BaselineUncoupled:
                est = baseline_uncoupled(bundle, tr, dims, run_cfg).first;
                break;
            }
            if (!est.finite()) {
                ++rep.failures[s];
                continue;
            }
            const CascadeSet truth = cascade(ch);
            const CascadeSet hat = cascade(est);
            const std::array<double, 3> e = nmse(hat, truth);
            bool ok = true;
            for (double x : e)
                ok = ok && std::isfinite(x);
            if (!ok) {
                ++rep.failures[s];
                continue;
            }
            const std::array<const ComplexMatrix*, 3> tp{&truth.p1, &truth.p2, &truth.p3};
            const std::array<const ComplexMatrix*, 3> hp{&hat.p1, &hat.p2, &hat.p3};
            for (int c = 0; c < 3; ++c) {
                rep.samples[s][c].push_back(e[c]);
                err_sum[c] += (*hp[c] - *tp[c]).squaredNorm();
                truth_sum[c] += tp[c]->squaredNorm();
            }
        }
        for (int c = 0; c < 3; ++c) {
            const auto& v = rep.samples[s][c];
            NmseSummary sum;
            sum.median = median(v);
            sum.mean = v.empty()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
            sum.ratio_of_sums = truth_sum[c] > 0 ? err_sum[c] / truth_sum[c]
                                                 : std::numeric_limits<double>::quiet_NaN();
            rep.summary[s][c] = sum;
        }
    }
    return rep;
}

void write_csv(std::ostream& os, const std::vector<NmseReport>& reports, bool header) {
    if (header)
        os << "estimator,snr_db,component,statistic,value,trials,failures\n";
    auto row = [&os](const std::string& est, double snr, int comp,
                     const char* stat, double value, int trials, int failures) {
        std::ostringstream line;
        line.precision(17);
        line << est << ',' << snr << ",P" << comp << ',' << stat << ','
             << value << ',' << trials << ',' << failures << '\n';
        os << line.str();
    };
    for (const auto& rep : reports) {
        const std::string name = estimator_name(rep.estimator);
        for (size_t s = 0; s < rep.snr_grid_db.size(); ++s)
            for (int c = 0; c < 3; ++c) {
                const auto& sum = rep.summary[s][c];
                row(name, rep.snr_grid_db[s], c + 1, "median", sum.median,
                    rep.trials, rep.failures[s]);
                row(name, rep.snr_grid_db[s], c + 1, "mean", sum.mean,
                    rep.trials, rep.failures[s]);
                row(name, rep.snr_grid_db[s], c + 1, "ratio_of_sums",
                    sum.ratio_of_sums, rep.trials, rep.failures[s]);
            }
    }
}

} // namespace dris
