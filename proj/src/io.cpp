#include "dris/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace dris {

namespace {

void write_array(const std::filesystem::path& p, const Complex* data,
                 std::size_t n) {
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw std::runtime_error("io: cannot open " + p.string() + " for writing");
    os.write(reinterpret_cast<const char*>(data),
             static_cast<std::streamsize>(n * sizeof(Complex)));
}

void read_array(const std::filesystem::path& p, Complex* data, std::size_t n) {
    std::ifstream is(p, std::ios::binary);
    if (!is)
        throw std::runtime_error("io: cannot open " + p.string());
    is.read(reinterpret_cast<char*>(data),
            static_cast<std::streamsize>(n * sizeof(Complex)));
    if (static_cast<std::size_t>(is.gcount()) != n * sizeof(Complex))
        throw std::runtime_error("io: short read on " + p.string());
}

void write_matrix(const std::filesystem::path& dir, const std::string& name,
                  const ComplexMatrix& M) {
    write_array(dir / (name + ".bin"), M.data(), static_cast<std::size_t>(M.size()));
}

void write_tensor(const std::filesystem::path& dir, const std::string& name,
                  const Tensor3& T) {
    write_array(dir / (name + ".bin"), T.data().data(),
                static_cast<std::size_t>(T.size()));
}

ComplexMatrix read_matrix(const std::filesystem::path& dir, const std::string& name,
                          Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix M(rows, cols);
    read_array(dir / (name + ".bin"), M.data(), static_cast<std::size_t>(M.size()));
    return M;
}

Tensor3 read_tensor(const std::filesystem::path& dir, const std::string& name,
                    Eigen::Index d1, Eigen::Index d2, Eigen::Index d3) {
    Tensor3 T(d1, d2, d3);
    read_array(dir / (name + ".bin"), T.data().data(),
               static_cast<std::size_t>(T.size()));
    return T;
}

} // namespace

void export_run(const std::filesystem::path& dir, const SystemDims& dims,
                const NoiseModel& noise, const ChannelSet& ch,
                const MeasurementBundle& bundle) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir / "manifest.txt");
        os << "m_bs " << dims.m_bs << "\nm_ue " << dims.m_ue
           << "\nm_s1 " << dims.m_s1 << "\nm_s2 " << dims.m_s2
           << "\ni " << dims.i_frames << "\nj " << dims.j_frames
           << "\nk " << dims.k_pilots << "\nseed " << noise.seed
           << "\nsigma2 ";
        os.precision(17);
        os << noise.sigma2 << "\n";
    }
    write_matrix(dir, "g1", ch.g1);
    write_matrix(dir, "g2", ch.g2);
    write_matrix(dir, "h1", ch.h1);
    write_matrix(dir, "h2", ch.h2);
    write_matrix(dir, "t", ch.t);
    write_tensor(dir, "y_ris1", bundle.y_ris1);
    write_tensor(dir, "y_ris2", bundle.y_ris2);
    write_tensor(dir, "y1c", bundle.y1c);
    write_tensor(dir, "y2c", bundle.y2c);
    write_matrix(dir, "y3_gen", bundle.y3_gen);
}

ImportedRun import_run(const std::filesystem::path& dir) {
    std::ifstream is(dir / "manifest.txt");
    if (!is)
        throw std::runtime_error("io: missing manifest in " + dir.string());
    std::map<std::string, std::string> kv;
    std::string key, value;
    while (is >> key >> value)
        kv[key] = value;

    ImportedRun run;
    run.dims.m_bs = std::stoll(kv.at("m_bs"));
    run.dims.m_ue = std::stoll(kv.at("m_ue"));
    run.dims.m_s1 = std::stoll(kv.at("m_s1"));
    run.dims.m_s2 = std::stoll(kv.at("m_s2"));
    run.dims.i_frames = std::stoll(kv.at("i"));
    run.dims.j_frames = std::stoll(kv.at("j"));
    run.dims.k_pilots = std::stoll(kv.at("k"));
    run.noise.seed = std::stoull(kv.at("seed"));
    run.noise.sigma2 = std::stod(kv.at("sigma2"));

    const auto& d = run.dims;
    run.channels.g1 = read_matrix(dir, "g1", d.m_s1, d.m_ue);
    run.channels.g2 = read_matrix(dir, "g2", d.m_s2, d.m_ue);
    run.channels.h1 = read_matrix(dir, "h1", d.m_bs, d.m_s1);
    run.channels.h2 = read_matrix(dir, "h2", d.m_bs, d.m_s2);
    run.channels.t = read_matrix(dir, "t", d.m_s2, d.m_s1);
    run.bundle.y_ris1 = read_tensor(dir, "y_ris1", d.m_bs, d.m_ue, d.i_frames);
    run.bundle.y_ris2 = read_tensor(dir, "y_ris2", d.m_bs, d.m_ue, d.j_frames);
    run.bundle.y1c = read_tensor(dir, "y1c", d.m_ue, (d.j_frames + 1) * d.m_bs, d.i_frames);
    run.bundle.y2c = read_tensor(dir, "y2c", d.m_bs, (d.i_frames + 1) * d.m_ue, d.j_frames);
    run.bundle.y3_gen = read_matrix(dir, "y3_gen", d.j_frames * d.m_bs, d.i_frames * d.m_ue);
    return run;
}

} // namespace dris
