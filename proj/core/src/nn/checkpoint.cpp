#include "shapecell/nn/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "shapecell/errors.hpp"

namespace shapecell::nn {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'K', 'P'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is, const std::string& what) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw DataError("checkpoint truncated while reading " + what);
    return v;
}

std::uint64_t read_u64(std::istream& is, const std::string& what) {
    std::uint64_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw DataError("checkpoint truncated while reading " + what);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<std::pair<std::string, Tensor>>& entries) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot open checkpoint for writing: " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u64(os, entries.size());
    for (const auto& [name, t] : entries) {
        write_u64(os, name.size());
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
        write_u64(os, t.rank());
        for (auto d : t.shape()) write_u64(os, static_cast<std::uint64_t>(d));
        os.write(reinterpret_cast<const char*>(t.data()),
                 static_cast<std::streamsize>(t.numel() * sizeof(float)));
    }
    if (!os) throw DataError("failed to write checkpoint: " + path);
}

std::vector<std::pair<std::string, Tensor>> load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open checkpoint: " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("not a checkpoint file: " + path);
    const std::uint32_t version = read_u32(is, "version");
    if (version != kVersion)
        throw DataError("unsupported checkpoint version " + std::to_string(version) + " in " +
                        path);
    const std::uint64_t count = read_u64(is, "entry count");
    std::vector<std::pair<std::string, Tensor>> entries;
    entries.reserve(count);
    for (std::uint64_t e = 0; e < count; ++e) {
        const std::uint64_t name_len = read_u64(is, "name length");
        if (name_len > (1u << 20)) throw DataError("implausible name length in " + path);
        std::string name(name_len, '\0');
        if (!is.read(name.data(), static_cast<std::streamsize>(name_len)))
            throw DataError("checkpoint truncated while reading name in " + path);
        const std::uint64_t rank = read_u64(is, "rank");
        if (rank > 8) throw DataError("implausible tensor rank in " + path);
        Shape shape(rank);
        std::uint64_t numel = 1;
        for (std::uint64_t i = 0; i < rank; ++i) {
            const std::uint64_t d = read_u64(is, "extent");
            if (d == 0 || d > (1ull << 32)) throw DataError("implausible extent in " + path);
            shape[i] = static_cast<std::int64_t>(d);
            numel *= d;
        }
        if (numel > (1ull << 31)) throw DataError("implausible tensor size in " + path);
        Tensor t(shape);
        if (!is.read(reinterpret_cast<char*>(t.data()),
                     static_cast<std::streamsize>(numel * sizeof(float))))
            throw DataError("checkpoint truncated while reading data for '" + name + "' in " +
                            path);
        entries.emplace_back(std::move(name), std::move(t));
    }
    return entries;
}

}  // namespace shapecell::nn
