#include "hpsusp/error.hpp"
#include "hpsusp/lookup_table.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <vector>

using namespace hpsusp;

namespace {

// Small synthetic table; the file format does not care how cells were produced.
LookupTable synthetic() {
    LookupTable t;
    t.dt = 0.002778;
    t.config_digest = 0x0123456789abcdefULL;
    for (double f : {3.0, 5.0, 7.0, 8.0}) {
        LookupGrid g;
        g.omega = 2.0 * 3.141592653589793 * f;
        g.p_axis = {7.5e5, 8.5e5, kPressureNodes};
        g.dp_axis = {-3500.0, 3500.0, kDeltaNodes};
        g.cells.resize(kPressureNodes * kDeltaNodes);
        g.filled_mask.resize(g.cells.size());
        for (std::size_t k = 0; k < g.cells.size(); ++k) {
            g.cells[k] = {static_cast<float>(k) * 0.5f + static_cast<float>(f), static_cast<float>(k % 97) * 1e-3f,
                          -static_cast<float>(k % 31) * 1e-4f};
            g.filled_mask[k] = (k % 3) != 0;
        }
        t.grids.push_back(std::move(g));
    }
    return t;
}

Errc load_error(const std::vector<unsigned char>& bytes) {
    try {
        deserialize(bytes);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a load error");
    return Errc::io;
}

template <class T>
void poke(std::vector<unsigned char>& bytes, std::size_t offset, T value) {
    std::memcpy(bytes.data() + offset, &value, sizeof value);
}

constexpr std::size_t kHeader = 4 + 4 + 8 + 8 + 4;

} // namespace

TEST_CASE("layout: header, per-grid block sizes, little-endian fields") {
    const LookupTable t = synthetic();
    const auto bytes = serialize(t);
    const std::size_t per_grid = 8 + 4 + 4 + 4 * 8 + kPressureNodes * kDeltaNodes * (12 + 1);
    CHECK(bytes.size() == kHeader + 4 * per_grid);
    CHECK(std::memcmp(bytes.data(), "HPLT", 4) == 0);
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    CHECK(bytes[8] == 0xef);
    CHECK(bytes[15] == 0x01);
    CHECK(bytes[kHeader - 4] == 4);
    CHECK(bytes[kHeader + 8] == 100);
    CHECK(bytes[kHeader + 12] == 200);
    CHECK(t.cell_payload_bytes() == 960000);
}

TEST_CASE("round trip is an identity") {
    const LookupTable t = synthetic();
    const auto bytes = serialize(t);
    const LookupTable back = deserialize(bytes, t.config_digest);
    CHECK(serialize(back) == bytes);
    CHECK(back.dt == t.dt);
    REQUIRE(back.grids.size() == t.grids.size());
    for (std::size_t k = 0; k < t.grids.size(); ++k) {
        CHECK(back.grids[k].omega == t.grids[k].omega);
        CHECK(back.grids[k].filled_mask == t.grids[k].filled_mask);
        CHECK(std::memcmp(back.grids[k].cells.data(), t.grids[k].cells.data(), t.grids[k].cells.size() * sizeof(Cell)) ==
              0);
    }
}

TEST_CASE("file save and load") {
    const LookupTable t = synthetic();
    const auto path = std::filesystem::temp_directory_path() / "hpsusp_table_file_test.tbl";
    save_table(t, path.string());
    CHECK(serialize(load_table(path.string())) == serialize(t));
    std::filesystem::remove(path);
    try {
        load_table(path.string());
        FAIL("expected io error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::io);
    }
}

TEST_CASE("corrupt streams are rejected with distinct codes") {
    const auto good = serialize(synthetic());

    auto magic = good;
    magic[0] = 'X';
    CHECK(load_error(magic) == Errc::bad_magic);

    auto version = good;
    poke<std::uint32_t>(version, 4, 2);
    CHECK(load_error(version) == Errc::unsupported_version);

    auto dims = good;
    poke<std::uint32_t>(dims, kHeader + 8, 99);
    CHECK(load_error(dims) == Errc::bad_dimensions);

    auto axis = good;
    poke<double>(axis, kHeader + 16 + 8, 7.0e5);  // p_max below p_min
    CHECK(load_error(axis) == Errc::bad_dimensions);

    auto mask = good;
    mask.back() = 7;
    CHECK(load_error(mask) == Errc::bad_dimensions);

    CHECK(load_error(std::vector<unsigned char>(good.begin(), good.end() - 1)) == Errc::truncated_payload);
    CHECK(load_error(std::vector<unsigned char>(good.begin(), good.begin() + 2)) == Errc::truncated_payload);
    CHECK(load_error(std::vector<unsigned char>(good.begin(), good.begin() + kHeader + 5)) == Errc::truncated_payload);

    auto trailing = good;
    trailing.push_back(0);
    CHECK(load_error(trailing) == Errc::trailing_data);

    try {
        deserialize(good, 42);
        FAIL("expected digest mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::digest_mismatch);
    }
}

TEST_CASE("tables that break the shape rules do not serialize") {
    LookupTable t = synthetic();
    t.grids[2].omega = t.grids[1].omega;
    CHECK_THROWS_AS(serialize(t), Error);
    t = synthetic();
    t.grids[1].dp_axis.min = -3000.0;
    CHECK_THROWS_AS(serialize(t), Error);
    t = synthetic();
    t.grids.resize(1);
    CHECK_THROWS_AS(serialize(t), Error);
}
