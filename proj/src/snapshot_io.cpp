#include "bhhg/snapshot_io.hpp"

#include "bhhg/errors.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace bhhg {

namespace {

constexpr std::array<char, 4> kMagic = {'B', 'H', 'H', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes;
    in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    return std::bit_cast<T>(bytes);
}

std::size_t record_size(std::size_t n_points) {
    return 4 + 4 + 3 * 8 + n_points * 16;
}

} // namespace

MemorySnapshots::MemorySnapshots(std::vector<Wavefunction> snaps) : snaps_(std::move(snaps)) {
    if (snaps_.empty())
        throw ContractViolation("MemorySnapshots: empty snapshot list");
}

void write_snapshot(std::ostream& out, const Wavefunction& psi) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(psi.grid->n_points));
    put_le<double>(out, psi.grid->x_min);
    put_le<double>(out, psi.grid->dx);
    put_le<double>(out, psi.t);
    for (const auto& a : psi.amplitudes) {
        put_le<double>(out, a.real());
        put_le<double>(out, a.imag());
    }
    if (!out)
        throw NumericsError("write_snapshot: stream write failed");
}

Wavefunction read_snapshot(std::istream& in, GridPtr grid_hint) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw ConfigError("read_snapshot: bad magic (not a BHH1 record)");
    const auto n = static_cast<std::size_t>(get_le<std::uint32_t>(in));
    const double x_min = get_le<double>(in);
    const double dx = get_le<double>(in);
    const double t = get_le<double>(in);

    Wavefunction psi;
    if (grid_hint && grid_hint->n_points == n && grid_hint->x_min == x_min &&
        grid_hint->dx == dx) {
        psi.grid = std::move(grid_hint);
    } else {
        psi.grid = make_shared_grid(x_min, x_min + static_cast<double>(n) * dx, n);
    }
    psi.t = t;
    psi.amplitudes.resize(n);
    for (auto& a : psi.amplitudes) {
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        a = {re, im};
    }
    if (!in)
        throw ConfigError("read_snapshot: truncated record");
    return psi;
}

SnapshotWriter::SnapshotWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_)
        throw ConfigError("SnapshotWriter: cannot open " + path.string());
}

void SnapshotWriter::append(const Wavefunction& psi) {
    write_snapshot(out_, psi);
    ++count_;
}

SnapshotFileSource::SnapshotFileSource(const std::filesystem::path& path)
    : in_(path, std::ios::binary) {
    if (!in_)
        throw ConfigError("SnapshotFileSource: cannot open " + path.string());
    Wavefunction first = read_snapshot(in_);
    grid_ = first.grid;
    record_bytes_ = record_size(grid_->n_points);
    const auto bytes = std::filesystem::file_size(path);
    if (bytes % record_bytes_ != 0)
        throw ConfigError("SnapshotFileSource: file size is not a whole number of records");
    n_records_ = bytes / record_bytes_;
}

double SnapshotFileSource::time(std::size_t i) const {
    if (i >= n_records_)
        throw ContractViolation("SnapshotFileSource::time: index out of range");
    // t sits after magic(4) + n_points(4) + x_min(8) + dx(8)
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(i * record_bytes_ + 24), std::ios::beg);
    return get_le<double>(in_);
}

Wavefunction SnapshotFileSource::load(std::size_t i) const {
    if (i >= n_records_)
        throw ContractViolation("SnapshotFileSource::load: index out of range");
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(i * record_bytes_), std::ios::beg);
    return read_snapshot(in_, grid_);
}

} // namespace bhhg
