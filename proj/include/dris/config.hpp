#ifndef DRIS_CONFIG_HPP
#define DRIS_CONFIG_HPP

#include "dris/evaluation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dris {

struct ExperimentConfig {
    SystemDims dims;
    std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25, 30};
    int trials = 200;
    std::vector<Estimator> estimators = {Estimator::CKraft, Estimator::CAlsRandom,
                                         Estimator::CAlsCkraftInit,
                                         Estimator::BaselineUncoupled};
    AlsConfig als;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "results";

    void validate() const;
    std::string to_text() const;
};

/// Parses a key = value config file ('#' comments, optional [sections]
/// which are ignored for lookup). Unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");
ExperimentConfig parse_config_file(const std::filesystem::path& path);

Estimator estimator_from_name(const std::string& name);

} // namespace dris

#endif
