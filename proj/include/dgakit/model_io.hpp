#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "dgakit/model.hpp"

namespace dgakit {

static_assert(std::endian::native == std::endian::little,
              "model container I/O assumes a little-endian host");

namespace detail {

inline constexpr char kModelMagic[4] = {'D', 'G', 'A', 'M'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

template <typename T>
void write_le(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw DataError("BadModelFile", "unexpected end of model file");
    return v;
}

inline void write_string(std::ostream& os, const std::string& s) {
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::istream& is, std::size_t max = 1 << 20) {
    const auto n = read_le<std::uint32_t>(is);
    if (n > max) throw DataError("BadModelFile", "string field too large");
    std::string s(n, '\0');
    is.read(s.data(), static_cast<std::streamsize>(n));
    if (!is) throw DataError("BadModelFile", "unexpected end of model file");
    return s;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string utc_stamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

}  // namespace detail

// Version tag = content hash of the weights + wall-clock stamp of when the
// snapshot was taken. Stable across save/load because it is stored verbatim.
inline std::string parameters_version(const std::vector<NamedTensor>& tensors) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& t : tensors) {
        h = detail::fnv1a64(t.name.data(), t.name.size(), h);
        h = detail::fnv1a64(t.values.data(), t.values.size() * sizeof(float), h);
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string(hex) + "-" + detail::utc_stamp();
}

inline void save_model(std::ostream& os, const ModelParameters& params) {
    os.write(detail::kModelMagic, 4);
    detail::write_le<std::uint32_t>(os, detail::kModelFormatVersion);
    detail::write_string(os, arch_name(params.spec.kind));
    nlohmann::json hyper = {{"spec", params.spec.to_json()}, {"version", params.version}};
    detail::write_string(os, hyper.dump());
    detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(params.tensors.size()));
    for (const auto& t : params.tensors) {
        detail::write_string(os, t.name);
        detail::write_le<std::uint64_t>(os, t.dims.size());
        for (std::size_t d : t.dims) detail::write_le<std::uint64_t>(os, d);
        os.write(reinterpret_cast<const char*>(t.values.data()),
                 static_cast<std::streamsize>(t.values.size() * sizeof(float)));
    }
    if (!os) throw RuntimeError("WriteFailed", "failed writing model container");
}

inline void save_model(const std::string& path, const ModelParameters& params) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("FileOpen", "cannot open '" + path + "' for writing");
    save_model(os, params);
}

inline ModelParameters load_model(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, detail::kModelMagic, 4) != 0) {
        throw DataError("BadModelFile", "missing DGAM magic");
    }
    const auto fmt = detail::read_le<std::uint32_t>(is);
    if (fmt != detail::kModelFormatVersion) {
        throw DataError("BadModelFile", "unsupported container version " + std::to_string(fmt));
    }
    const std::string arch = detail::read_string(is);
    const std::string hyper_raw = detail::read_string(is, 1 << 24);
    nlohmann::json hyper = nlohmann::json::parse(hyper_raw, nullptr, false);
    if (hyper.is_discarded()) {
        throw DataError("BadModelFile", "hyperparameter block is not valid JSON");
    }
    ModelParameters params;
    params.spec = ArchitectureSpec::from_json(hyper.at("spec"));
    params.version = hyper.at("version").get<std::string>();
    if (arch != arch_name(params.spec.kind)) {
        throw DataError("BadModelFile", "architecture id '" + arch +
                                            "' disagrees with hyperparameter block");
    }
    const auto count = detail::read_le<std::uint32_t>(is);
    params.tensors.resize(count);
    for (auto& t : params.tensors) {
        t.name = detail::read_string(is);
        const auto rank = detail::read_le<std::uint64_t>(is);
        if (rank > 8) throw DataError("BadModelFile", "tensor rank too large");
        std::size_t n = 1;
        t.dims.resize(rank);
        for (auto& d : t.dims) {
            d = detail::read_le<std::uint64_t>(is);
            n *= d;
        }
        if (n > (std::size_t{1} << 30)) {
            throw DataError("BadModelFile", "tensor too large");
        }
        t.values.resize(n);
        is.read(reinterpret_cast<char*>(t.values.data()),
                static_cast<std::streamsize>(n * sizeof(float)));
        if (!is) throw DataError("BadModelFile", "unexpected end of tensor data");
    }
    return params;
}

inline ModelParameters load_model(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("FileOpen", "cannot open model file '" + path + "'");
    return load_model(is);
}

}  // namespace dgakit
