#include "neurocap/data/vector_file.hpp"

#include <unordered_set>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/data/binary_io.hpp"
#include "neurocap/error.hpp"

namespace neurocap::data {

namespace {

std::string_view magic_of(VectorFileKind kind) {
    return kind == VectorFileKind::responses ? "NRSP" : "EMBD";
}

}  // namespace

std::vector<std::byte> encode_vector_file(VectorFileKind kind, std::size_t dim,
                                          std::span<const VectorRecord> records) {
    if (dim == 0) throw ArgumentError("vector file: dim must be positive");
    ByteWriter w;
    w.raw(magic_of(kind));
    w.u32(kVectorFileVersion);
    w.u32(static_cast<std::uint32_t>(dim));
    w.u64(records.size());
    for (const auto& r : records) {
        require_dim(static_cast<std::size_t>(r.values.size()), dim, "vector file record '" + r.id + "'");
        require_finite(as_span(r.values), "vector file record '" + r.id + "'");
        w.string(r.id);
        for (double v : as_span(r.values)) w.f32(static_cast<float>(v));
    }
    return w.take();
}

VectorFile decode_vector_file(std::span<const std::byte> bytes,
                              std::optional<VectorFileKind> expected) {
    ByteReader r(bytes);
    const std::string magic = r.raw(4);
    VectorFile file;
    if (magic == "NRSP") {
        file.kind = VectorFileKind::responses;
    } else if (magic == "EMBD") {
        file.kind = VectorFileKind::embeddings;
    } else {
        throw DataError("vector file: bad magic");
    }
    if (expected && *expected != file.kind) {
        throw DataError("vector file: expected " + std::string(magic_of(*expected)) + ", found " + magic);
    }
    const std::uint32_t version = r.u32();
    if (version != kVectorFileVersion) {
        throw DataError("vector file: unsupported version " + std::to_string(version));
    }
    file.dim = r.u32();
    if (file.dim == 0) throw DataError("vector file: zero dimension");
    const std::uint64_t count = r.u64();
    // Each record needs at least 4 + 4*dim bytes; reject impossible counts
    // before reserving.
    if (count > r.remaining() / (4 + 4 * file.dim)) throw DataError("vector file: truncated");
    file.records.reserve(count);
    std::unordered_set<std::string> seen;
    for (std::uint64_t k = 0; k < count; ++k) {
        VectorRecord rec;
        rec.id = r.string(r.remaining());
        if (!seen.insert(rec.id).second) throw DataError("vector file: duplicate id '" + rec.id + "'");
        rec.values.resize(static_cast<Eigen::Index>(file.dim));
        for (std::size_t d = 0; d < file.dim; ++d) {
            rec.values(static_cast<Eigen::Index>(d)) = static_cast<double>(r.f32());
        }
        if (!all_finite(as_span(rec.values))) {
            throw DataError("vector file: non-finite value in '" + rec.id + "'");
        }
        file.records.push_back(std::move(rec));
    }
    if (!r.at_end()) throw DataError("vector file: trailing bytes");
    return file;
}

void write_vector_file(const std::filesystem::path& path, VectorFileKind kind, std::size_t dim,
                       std::span<const VectorRecord> records) {
    write_bytes_atomic(path, encode_vector_file(kind, dim, records));
}

VectorFile read_vector_file(const std::filesystem::path& path,
                            std::optional<VectorFileKind> expected) {
    try {
        return decode_vector_file(read_bytes(path), expected);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace neurocap::data
