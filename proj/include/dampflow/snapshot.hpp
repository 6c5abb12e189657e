#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dampflow/field.hpp"

namespace dampflow {

/// Spectral snapshot file: one UTF-8 JSON header line terminated by '\n',
/// then raw little-endian complex128 coefficients, component-major then
/// lattice row-major (the in-memory layout of SpectralField). See
/// docs/file-formats.md for the bit-exact layout.
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time,
                    const nlohmann::json& extra = nlohmann::json::object());

struct Snapshot {
    SpectralField field;
    double time = 0.0;
    nlohmann::json header;
};

Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace dampflow
