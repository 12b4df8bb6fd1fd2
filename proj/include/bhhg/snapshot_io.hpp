#pragma once

#include "bhhg/wavefunction.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <vector>

namespace bhhg {

/// Read-only access to an ordered sequence of wavefunction snapshots.
/// Implementations must be usable from a single thread at a time.
class SnapshotSource {
  public:
    virtual ~SnapshotSource() = default;
    virtual std::size_t size() const = 0;
    virtual const SpatialGrid& grid() const = 0;
    virtual double time(std::size_t i) const = 0;
    virtual Wavefunction load(std::size_t i) const = 0;
};

/// Snapshots held in memory.
class MemorySnapshots final : public SnapshotSource {
  public:
    explicit MemorySnapshots(std::vector<Wavefunction> snaps);
    std::size_t size() const override { return snaps_.size(); }
    const SpatialGrid& grid() const override { return *snaps_.front().grid; }
    double time(std::size_t i) const override { return snaps_[i].t; }
    Wavefunction load(std::size_t i) const override { return snaps_[i]; }
    const std::vector<Wavefunction>& all() const { return snaps_; }

  private:
    std::vector<Wavefunction> snaps_;
};

// Binary snapshot record: magic "BHH1", little-endian u32 n_points,
// f64 x_min, f64 dx, f64 t, then n_points interleaved (re, im) f64 pairs.
// A stream is a concatenation of records sharing one grid.

void write_snapshot(std::ostream& out, const Wavefunction& psi);
Wavefunction read_snapshot(std::istream& in, GridPtr grid_hint = nullptr);

/// Appends BHH1 records to a file.
class SnapshotWriter {
  public:
    explicit SnapshotWriter(const std::filesystem::path& path);
    void append(const Wavefunction& psi);
    std::size_t count() const { return count_; }

  private:
    std::ofstream out_;
    std::size_t count_ = 0;
};

/// Random access into a BHH1 record file (fixed record size).
class SnapshotFileSource final : public SnapshotSource {
  public:
    explicit SnapshotFileSource(const std::filesystem::path& path);
    std::size_t size() const override { return n_records_; }
    const SpatialGrid& grid() const override { return *grid_; }
    double time(std::size_t i) const override;
    Wavefunction load(std::size_t i) const override;

  private:
    mutable std::ifstream in_;
    GridPtr grid_;
    std::size_t n_records_ = 0;
    std::size_t record_bytes_ = 0;
};

} // namespace bhhg
