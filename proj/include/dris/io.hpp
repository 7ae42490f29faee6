#ifndef DRIS_IO_HPP
#define DRIS_IO_HPP

#include "dris/protocol.hpp"

#include <filesystem>

namespace dris {

/// Exports the channels and measurement tensors as raw complex-double
/// column-major arrays plus a text manifest carrying dims, seed and sigma2.
void export_run(const std::filesystem::path& dir, const SystemDims& dims,
                const NoiseModel& noise, const ChannelSet& ch,
                const MeasurementBundle& bundle);

struct ImportedRun {
    SystemDims dims;
    NoiseModel noise;
    ChannelSet channels;
    MeasurementBundle bundle;
};

ImportedRun import_run(const std::filesystem::path& dir);

} // namespace dris

#endif
