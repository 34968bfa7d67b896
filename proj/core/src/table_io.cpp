// Binary table file, little-endian:
//   "HPLT" u32 version u64 config_digest f64 dt u32 n_freq
//   per grid: f64 omega u32 n_p u32 n_dp f64 p_min f64 p_max f64 dp_min f64 dp_max
//             n_p*n_dp * (f32 f_out, f32 v, f32 h)   p-major
//             n_p*n_dp * u8 filled flag

#include "hpsusp/error.hpp"
#include "hpsusp/lookup_table.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace hpsusp {

namespace {

constexpr unsigned char kMagic[4] = {'H', 'P', 'L', 'T'};

class Writer {
public:
    explicit Writer(std::vector<unsigned char>& out) : out_(out) {}

    template <class U>
    void uint(U v) {
        for (std::size_t i = 0; i < sizeof(U); ++i) out_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }
    void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }
    void f32(float v) { uint(std::bit_cast<std::uint32_t>(v)); }
    void bytes(const unsigned char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }

private:
    std::vector<unsigned char>& out_;
};

class Reader {
public:
    explicit Reader(std::span<const unsigned char> in) : in_(in) {}

    template <class U>
    U uint() {
        need(sizeof(U));
        U v = 0;
        for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(static_cast<U>(in_[pos_ + i]) << (8 * i));
        pos_ += sizeof(U);
        return v;
    }
    double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
    float f32() { return std::bit_cast<float>(uint<std::uint32_t>()); }
    std::span<const unsigned char> bytes(std::size_t n) {
        need(n);
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t remaining() const { return in_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw Error(Errc::truncated_payload, "table stream ends early");
    }
    std::span<const unsigned char> in_;
    std::size_t pos_ = 0;
};

bool uniform_axis_ok(const Axis& a) {
    return std::isfinite(a.min) && std::isfinite(a.max) && a.max > a.min && a.nodes >= 2;
}

} // namespace

void LookupTable::validate() const {
    auto fail = [](const std::string& m) { throw Error(Errc::bad_dimensions, m); };
    if (grids.size() < 2) fail("table needs at least two grids");
    if (!(dt > 0.0)) fail("table dt must be > 0");
    const LookupGrid& g0 = grids.front();
    for (std::size_t k = 0; k < grids.size(); ++k) {
        const LookupGrid& g = grids[k];
        if (g.p_axis.nodes != kPressureNodes || g.dp_axis.nodes != kDeltaNodes) fail("grid must be 100 x 200");
        if (!uniform_axis_ok(g.p_axis) || !uniform_axis_ok(g.dp_axis)) fail("axes must be strictly increasing");
        if (!(g.p_axis.min > 0.0)) fail("pressure axis must start above zero");
        if (g.dp_axis.min != -g.dp_axis.max) fail("pressure-step axis must be symmetric about zero");
        if (g.p_axis.min != g0.p_axis.min || g.p_axis.max != g0.p_axis.max || g.dp_axis.max != g0.dp_axis.max)
            fail("all grids must share axis ranges");
        if (g.cells.size() != kPressureNodes * kDeltaNodes || g.filled_mask.size() != g.cells.size())
            fail("cell count must be 100 * 200");
        if (!(g.omega >= 0.0) || (k > 0 && !(g.omega > grids[k - 1].omega)))
            fail("grid frequencies must be strictly increasing");
    }
}

std::size_t LookupTable::cell_payload_bytes() const {
    std::size_t n = 0;
    for (const auto& g : grids) n += g.cells.size() * 3 * sizeof(float);
    return n;
}

std::vector<unsigned char> serialize(const LookupTable& table) {
    table.validate();
    std::vector<unsigned char> out;
    Writer w(out);
    w.bytes(kMagic, 4);
    w.uint<std::uint32_t>(kTableVersion);
    w.uint<std::uint64_t>(table.config_digest);
    w.f64(table.dt);
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(table.grids.size()));
    for (const LookupGrid& g : table.grids) {
        w.f64(g.omega);
        w.uint<std::uint32_t>(static_cast<std::uint32_t>(g.p_axis.nodes));
        w.uint<std::uint32_t>(static_cast<std::uint32_t>(g.dp_axis.nodes));
        w.f64(g.p_axis.min);
        w.f64(g.p_axis.max);
        w.f64(g.dp_axis.min);
        w.f64(g.dp_axis.max);
        for (const Cell& c : g.cells) {
            w.f32(c.f_out);
            w.f32(c.v);
            w.f32(c.h);
        }
        w.bytes(g.filled_mask.data(), g.filled_mask.size());
    }
    return out;
}

LookupTable deserialize(std::span<const unsigned char> bytes) {
    Reader r(bytes);
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        if (bytes.size() < 4) throw Error(Errc::truncated_payload, "table stream ends before the magic");
        throw Error(Errc::bad_magic, "not a lookup-table file");
    }
    r.bytes(4);
    const auto version = r.uint<std::uint32_t>();
    if (version != kTableVersion) throw Error(Errc::unsupported_version, "version " + std::to_string(version));

    LookupTable t;
    t.config_digest = r.uint<std::uint64_t>();
    t.dt = r.f64();
    const auto n_freq = r.uint<std::uint32_t>();
    if (n_freq < 2 || n_freq > 4096) throw Error(Errc::bad_dimensions, "implausible grid count");
    for (std::uint32_t k = 0; k < n_freq; ++k) {
        LookupGrid g;
        g.omega = r.f64();
        const auto n_p = r.uint<std::uint32_t>();
        const auto n_dp = r.uint<std::uint32_t>();
        if (n_p != kPressureNodes || n_dp != kDeltaNodes) throw Error(Errc::bad_dimensions, "grid must be 100 x 200");
        g.p_axis = {r.f64(), 0.0, n_p};
        g.p_axis.max = r.f64();
        g.dp_axis = {r.f64(), 0.0, n_dp};
        g.dp_axis.max = r.f64();
        const std::size_t count = std::size_t{n_p} * n_dp;
        g.cells.resize(count);
        for (Cell& c : g.cells) {
            c.f_out = r.f32();
            c.v = r.f32();
            c.h = r.f32();
        }
        const auto mask = r.bytes(count);
        g.filled_mask.assign(mask.begin(), mask.end());
        for (unsigned char m : g.filled_mask)
            if (m > 1) throw Error(Errc::bad_dimensions, "filled mask must hold 0/1");
        t.grids.push_back(std::move(g));
    }
    if (r.remaining() != 0) throw Error(Errc::trailing_data, std::to_string(r.remaining()) + " bytes after payload");
    t.validate();
    return t;
}

LookupTable deserialize(std::span<const unsigned char> bytes, std::uint64_t expected_digest) {
    LookupTable t = deserialize(bytes);
    if (t.config_digest != expected_digest)
        throw Error(Errc::digest_mismatch, "table was built from a different suspension configuration");
    return t;
}

void save_table(const LookupTable& table, const std::string& path) {
    const auto bytes = serialize(table);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io, "write failed for '" + path + "'");
}

LookupTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

} // namespace hpsusp
