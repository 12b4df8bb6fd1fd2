#include "bhhg/errors.hpp"
#include "bhhg/snapshot_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace bhhg;
namespace fs = std::filesystem;

namespace {

Wavefunction random_state(GridPtr grid, unsigned seed, double t) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<Complex> a(grid->n_points);
    for (auto& v : a)
        v = {dist(rng), dist(rng)};
    Wavefunction psi(std::move(grid), std::move(a), t);
    normalize(psi);
    return psi;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("bhhg_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("snapshot record round trip is bit exact") {
    const auto grid = make_shared_grid(-3.0, 3.0, 32);
    const auto psi = random_state(grid, 11, 2.5);

    std::stringstream buf;
    write_snapshot(buf, psi);

    // magic + u32 + 3 doubles + 32 complex pairs
    CHECK(buf.str().size() == 4 + 4 + 24 + 32 * 16);
    CHECK(buf.str().substr(0, 4) == "BHH1");

    const auto back = read_snapshot(buf);
    CHECK(back.t == psi.t);
    CHECK(back.grid->n_points == 32);
    CHECK(back.grid->x_min == grid->x_min);
    CHECK(back.grid->dx == grid->dx);
    REQUIRE(back.amplitudes.size() == psi.amplitudes.size());
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j)
        CHECK(back.amplitudes[j] == psi.amplitudes[j]);
}

TEST_CASE("read_snapshot rejects garbage") {
    std::stringstream buf("not a snapshot at all");
    CHECK_THROWS_AS(read_snapshot(buf), ConfigError);
}

TEST_CASE("snapshot stream file with random access") {
    TempDir tmp;
    const auto path = tmp.path / "stream.bhh1";
    const auto grid = make_shared_grid(-5.0, 5.0, 64);

    {
        SnapshotWriter writer(path);
        for (unsigned i = 0; i < 5; ++i)
            writer.append(random_state(grid, 100 + i, 0.25 * i));
        CHECK(writer.count() == 5);
    }

    SnapshotFileSource source(path);
    CHECK(source.size() == 5);
    CHECK(source.grid().n_points == 64);
    for (std::size_t i : {std::size_t{3}, std::size_t{0}, std::size_t{4}, std::size_t{1}}) {
        CHECK(source.time(i) == doctest::Approx(0.25 * static_cast<double>(i)));
        const auto psi = random_state(grid, 100 + static_cast<unsigned>(i), 0.25 * i);
        const auto loaded = source.load(i);
        CHECK(loaded.t == doctest::Approx(psi.t));
        CHECK(loaded.amplitudes == psi.amplitudes);
    }
    CHECK_THROWS_AS(source.load(5), ContractViolation);
}

TEST_CASE("truncated stream is rejected") {
    TempDir tmp;
    const auto path = tmp.path / "broken.bhh1";
    const auto grid = make_shared_grid(-5.0, 5.0, 64);
    {
        SnapshotWriter writer(path);
        writer.append(random_state(grid, 1, 0.0));
    }
    fs::resize_file(path, fs::file_size(path) - 8);
    CHECK_THROWS_AS(SnapshotFileSource{path}, ConfigError);
}

TEST_CASE("memory snapshots expose the same interface") {
    const auto grid = make_shared_grid(-5.0, 5.0, 64);
    std::vector<Wavefunction> snaps;
    for (unsigned i = 0; i < 3; ++i)
        snaps.push_back(random_state(grid, i, 0.5 * i));
    MemorySnapshots source(std::move(snaps));
    CHECK(source.size() == 3);
    CHECK(source.time(2) == doctest::Approx(1.0));
    CHECK(source.load(1).t == doctest::Approx(0.5));
    CHECK_THROWS_AS(MemorySnapshots{std::vector<Wavefunction>{}}, ContractViolation);
}
