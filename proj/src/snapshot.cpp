#include "dampflow/snapshot.hpp"

#include <fstream>
#include <stdexcept>

namespace dampflow {

namespace {

constexpr const char* kFormatName = "dampflow-snapshot";
constexpr int kFormatVersion = 1;

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time,
                    const nlohmann::json& extra) {
    nlohmann::json header = extra;
    header["format"] = kFormatName;
    header["version"] = kFormatVersion;
    header["n_points"] = field.grid().n_points();
    header["box_scale"] = field.grid().box_scale();
    header["trunc_radius"] = field.grid().trunc_radius();
    header["time"] = time;
    header["components"] = 3;
    header["dtype"] = "complex128-le";

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open snapshot file for writing: " + path.string());
    out << header.dump() << '\n';
    const auto& data = field.raw();
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(data[0])));
    if (!out) throw std::runtime_error("short write to snapshot file: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("snapshot file missing header line: " + path.string());
    }
    nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded()) {
        throw std::runtime_error("snapshot header is not valid JSON: " + path.string());
    }
    if (header.value("format", "") != kFormatName || header.value("version", 0) != kFormatVersion) {
        throw std::runtime_error("unsupported snapshot format in " + path.string());
    }

    Snapshot snap;
    snap.header = header;
    snap.time = header.value("time", 0.0);
    const Grid grid = make_grid(header.at("n_points").get<int>(),
                                header.at("box_scale").get<double>(),
                                header.at("trunc_radius").get<double>());
    snap.field = SpectralField(grid);
    auto& data = snap.field.raw();
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(data[0])));
    if (in.gcount() != static_cast<std::streamsize>(data.size() * sizeof(data[0]))) {
        throw std::runtime_error("snapshot payload truncated: " + path.string());
    }
    char sentinel = 0;
    if (in.read(&sentinel, 1); in.gcount() != 0) {
        throw std::runtime_error("snapshot payload has trailing bytes: " + path.string());
    }
    return snap;
}

}  // namespace dampflow
