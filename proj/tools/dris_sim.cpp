#include "dris/config.hpp"
#include "dris/evaluation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot write " + tmp.string());
        os << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string plot_data(const dris::NmseReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "snr_db,median_p1,median_p2,median_p3,mean_p1,mean_p2,mean_p3\n";
    for (size_t s = 0; s < rep.snr_grid_db.size(); ++s) {
        os << rep.snr_grid_db[s];
        for (int c = 0; c < 3; ++c)
            os << ',' << rep.summary[s][c].median;
        for (int c = 0; c < 3; ++c)
            os << ',' << rep.summary[s][c].mean;
        os << '\n';
    }
    return os.str();
}

int run_experiment(const dris::ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);

    std::vector<dris::NmseReport> reports;
    for (dris::Estimator est : cfg.estimators) {
        const auto verdict = dris::check_identifiability(cfg.dims, est);
        if (!verdict.satisfied) {
            std::cerr << "warning: " << dris::estimator_name(est)
                      << " identifiability violated:";
            for (const auto& v : verdict.violated)
                std::cerr << " [" << v << "]";
            std::cerr << "\n";
        }
        reports.push_back(dris::run_monte_carlo(cfg.dims, cfg.snr_grid_db,
                                                cfg.trials, est, cfg.als, cfg.seed));
    }

    std::ostringstream csv;
    dris::write_csv(csv, reports);
    write_atomic(cfg.output_dir / "results.csv", csv.str());
    write_atomic(cfg.output_dir / "manifest.txt",
                 "# dris_sim " + std::string(kVersion) + "\n" + cfg.to_text());
    for (const auto& rep : reports)
        write_atomic(cfg.output_dir /
                         (dris::estimator_name(rep.estimator) + "_plot.csv"),
                     plot_data(rep));
    std::cout << "wrote " << (cfg.output_dir / "results.csv").string() << "\n";
    return 0;
}

const std::map<std::string, std::string> kPresets = {
    {"fig6",
     "# full training: I = M_S1, J = M_S2\n"
     "m_bs = 4\nm_ue = 2\nk = 2\nm_s1 = 30\nm_s2 = 20\ni = 30\nj = 20\n"
     "snr_grid = 0, 5, 10, 15, 20, 25, 30\ntrials = 200\n"
     "estimators = ckraft, cals_random, cals_ckraft_init, baseline_uncoupled\n"
     "t_max = 10\nseed = 1\n"},
    {"fig7",
     "# reduced training: I < M_S1, J < M_S2\n"
     "m_bs = 4\nm_ue = 2\nk = 2\nm_s1 = 30\nm_s2 = 20\ni = 25\nj = 15\n"
     "snr_grid = 0, 5, 10, 15, 20, 25, 30\ntrials = 200\n"
     "estimators = ckraft, cals_random, cals_ckraft_init\n"
     "t_max = 10\nseed = 1\n"},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double-RIS MIMO coupled tensor channel estimation simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // run
    std::string config_path, preset_name;
    std::string output_override, estimators_override, snr_override;
    int trials_override = -1, t_max_override = -1;
    std::int64_t seed_override = -1;
    auto* run = app.add_subcommand("run", "run a Monte Carlo experiment");
    run->add_option("config", config_path, "experiment config file");
    run->add_option("--preset", preset_name, "use a named preset instead of a file");
    run->add_option("--trials", trials_override, "override trial count");
    run->add_option("--t-max", t_max_override, "override ALS iteration cap");
    run->add_option("--seed", seed_override, "override RNG seed");
    run->add_option("--snr-grid", snr_override, "override SNR grid (comma list, dB)");
    run->add_option("--estimators", estimators_override, "override estimator list");
    run->add_option("-o,--output", output_override, "output directory");

    // identify
    dris::SystemDims id_dims;
    auto* identify = app.add_subcommand("identify", "print identifiability verdicts");
    identify->add_option("--m-bs", id_dims.m_bs)->required();
    identify->add_option("--m-ue", id_dims.m_ue)->required();
    identify->add_option("--m-s1", id_dims.m_s1)->required();
    identify->add_option("--m-s2", id_dims.m_s2)->required();
    identify->add_option("-i", id_dims.i_frames)->required();
    identify->add_option("-j", id_dims.j_frames)->required();
    identify->add_option("-k", id_dims.k_pilots)->required();

    auto* presets = app.add_subcommand("presets", "list built-in experiment presets");
    std::string show_preset;
    presets->add_option("--show", show_preset, "print a preset's config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*presets) {
            if (!show_preset.empty()) {
                auto it = kPresets.find(show_preset);
                if (it == kPresets.end()) {
                    std::cerr << "unknown preset '" << show_preset << "'\n";
                    return 2;
                }
                std::cout << it->second;
            } else {
                for (const auto& [name, text] : kPresets)
                    std::cout << name << "\n";
            }
            return 0;
        }
        if (*identify) {
            for (dris::Estimator e :
                 {dris::Estimator::CKraft, dris::Estimator::CAlsRandom,
                  dris::Estimator::CAlsCkraftInit,
                  dris::Estimator::BaselineUncoupled}) {
                const auto v = dris::check_identifiability(id_dims, e);
                std::cout << dris::estimator_name(e) << ": "
                          << (v.satisfied ? "satisfied" : "violated");
                for (const auto& ineq : v.violated)
                    std::cout << " [" << ineq << "]";
                std::cout << "\n";
            }
            return 0;
        }

        dris::ExperimentConfig cfg;
        if (!preset_name.empty()) {
            auto it = kPresets.find(preset_name);
            if (it == kPresets.end()) {
                std::cerr << "unknown preset '" << preset_name << "'\n";
                return 2;
            }
            cfg = dris::parse_config_text(it->second, "preset:" + preset_name);
        } else if (!config_path.empty()) {
            cfg = dris::parse_config_file(config_path);
        } else {
            std::cerr << "run: a config file or --preset is required\n";
            return 2;
        }
        if (trials_override >= 0) cfg.trials = trials_override;
        if (t_max_override >= 0) cfg.als.t_max = t_max_override;
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (!snr_override.empty()) {
            cfg.snr_grid_db.clear();
            std::stringstream ss(snr_override);
            std::string v;
            while (std::getline(ss, v, ','))
                cfg.snr_grid_db.push_back(std::stod(v));
        }
        if (!estimators_override.empty()) {
            cfg.estimators.clear();
            std::stringstream ss(estimators_override);
            std::string v;
            while (std::getline(ss, v, ',')) {
                while (!v.empty() && v.front() == ' ') v.erase(v.begin());
                cfg.estimators.push_back(dris::estimator_from_name(v));
            }
        }
        if (!output_override.empty()) {
            cfg.output_dir = output_override;
        } else if (const char* env = std::getenv("DRIS_OUTPUT_DIR")) {
            cfg.output_dir = std::filesystem::path(env) / cfg.output_dir;
        }
        cfg.validate();
        return run_experiment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
