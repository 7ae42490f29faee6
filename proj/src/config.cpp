#include "dris/config.hpp"

#include <fstream>
#include <sstream>

namespace dris {

void ExperimentConfig::validate() const {
    dims.validate();
    if (trials < 1)
        throw std::invalid_argument("config: trials must be >= 1");
    if (snr_grid_db.empty())
        throw std::invalid_argument("config: snr_grid must be non-empty");
    if (estimators.empty())
        throw std::invalid_argument("config: estimators must be non-empty");
    if (als.t_max < 1)
        throw std::invalid_argument("config: t_max must be >= 1");
    if (als.rel_change_tol < 0)
        throw std::invalid_argument("config: tol must be >= 0");
}

Estimator estimator_from_name(const std::string& name) {
    if (name == "ckraft") return Estimator::CKraft;
    if (name == "cals_random") return Estimator::CAlsRandom;
    if (name == "cals_ckraft_init") return Estimator::CAlsCkraftInit;
    if (name == "baseline_uncoupled") return Estimator::BaselineUncoupled;
    throw std::invalid_argument("config: unknown estimator '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[' && line.back() == ']')
            continue;  // sections are organizational only
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "m_bs") cfg.dims.m_bs = std::stoll(value);
            else if (key == "m_ue") cfg.dims.m_ue = std::stoll(value);
            else if (key == "m_s1") cfg.dims.m_s1 = std::stoll(value);
            else if (key == "m_s2") cfg.dims.m_s2 = std::stoll(value);
            else if (key == "i") cfg.dims.i_frames = std::stoll(value);
            else if (key == "j") cfg.dims.j_frames = std::stoll(value);
            else if (key == "k") cfg.dims.k_pilots = std::stoll(value);
            else if (key == "trials") cfg.trials = std::stoi(value);
            else if (key == "t_max") cfg.als.t_max = std::stoi(value);
            else if (key == "tol") cfg.als.rel_change_tol = std::stod(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "output") cfg.output_dir = value;
            else if (key == "snr_grid") {
                cfg.snr_grid_db.clear();
                for (const auto& v : split_list(value))
                    cfg.snr_grid_db.push_back(std::stod(v));
            } else if (key == "estimators") {
                cfg.estimators.clear();
                for (const auto& v : split_list(value))
                    cfg.estimators.push_back(estimator_from_name(v));
            } else {
                throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                            ": unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": bad value for '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw std::invalid_argument("config: cannot open " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "[dims]\n"
       << "m_bs = " << dims.m_bs << "\nm_ue = " << dims.m_ue
       << "\nm_s1 = " << dims.m_s1 << "\nm_s2 = " << dims.m_s2
       << "\ni = " << dims.i_frames << "\nj = " << dims.j_frames
       << "\nk = " << dims.k_pilots << "\n\n[experiment]\nsnr_grid = ";
    for (size_t s = 0; s < snr_grid_db.size(); ++s)
        os << (s ? ", " : "") << snr_grid_db[s];
    os << "\ntrials = " << trials << "\nestimators = ";
    for (size_t e = 0; e < estimators.size(); ++e)
        os << (e ? ", " : "") << estimator_name(estimators[e]);
    os << "\nseed = " << seed << "\n\n[als]\nt_max = " << als.t_max
       << "\ntol = " << als.rel_change_tol << "\n";
    return os.str();
}

} // namespace dris
