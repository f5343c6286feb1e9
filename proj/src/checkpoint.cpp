#include "pga/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout is little-endian");

namespace pga {

namespace {

constexpr char kMagic[8] = {'P', 'G', 'A', 'C', 'H', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kLayout = 1;  // k1 outer -m..m, k2 inner 0..m; u, v, T
constexpr std::uint32_t kHeaderBytes = 8 + 4 + 4 + 4 + 4 + 8 + 6 * 8;

template <typename T>
void put(std::vector<char>& buf, T v) {
    const size_t off = buf.size();
    buf.resize(off + sizeof(T));
    std::memcpy(buf.data() + off, &v, sizeof(T));
}

template <typename T>
T take(const std::vector<char>& buf, size_t& off) {
    if (off + sizeof(T) > buf.size())
        throw std::runtime_error("checkpoint: truncated header");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

void append_field(std::vector<char>& buf, const SpectralField& f) {
    const int m = f.m();
    for (int r = 0; r < 2 * m + 1; ++r) {
        for (int c = 0; c <= m; ++c) {
            put(buf, f.coeffs()(r, c).real());
            put(buf, f.coeffs()(r, c).imag());
        }
    }
}

SpectralField extract_field(const std::vector<char>& buf, size_t& off, int m, Parity parity) {
    SpectralField f(m, parity);
    for (int r = 0; r < 2 * m + 1; ++r) {
        for (int c = 0; c <= m; ++c) {
            const double re = take<double>(buf, off);
            const double im = take<double>(buf, off);
            f.coeffs()(r, c) = Complex(re, im);
        }
    }
    return f;
}

}  // namespace

void write_checkpoint(const State& state, const Params& params,
                      const std::filesystem::path& path) {
    state.validate();
    std::vector<char> buf;
    buf.insert(buf.end(), kMagic, kMagic + 8);
    put(buf, kVersion);
    put(buf, kHeaderBytes);
    put(buf, static_cast<std::uint32_t>(state.m()));
    put(buf, kLayout);
    put(buf, state.t);
    put(buf, params.nu);
    put(buf, params.kappa);
    put(buf, params.eps1);
    put(buf, params.eps2);
    put(buf, params.f0);
    put(buf, params.alpha);
    append_field(buf, state.u);
    append_field(buf, state.v);
    append_field(buf, state.T);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path.string() + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

CheckpointData read_checkpoint(const std::filesystem::path& path, int expected_m) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path.string());
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    size_t off = 0;
    if (buf.size() < kHeaderBytes || std::memcmp(buf.data(), kMagic, 8) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path.string());
    off = 8;
    const auto version = take<std::uint32_t>(buf, off);
    if (version != kVersion)
        throw std::runtime_error("checkpoint: version mismatch (file " + std::to_string(version) +
                                 ", reader " + std::to_string(kVersion) + ")");
    const auto header_bytes = take<std::uint32_t>(buf, off);
    if (header_bytes != kHeaderBytes)
        throw std::runtime_error("checkpoint: unexpected header length");
    const int m = static_cast<int>(take<std::uint32_t>(buf, off));
    if (m < 1) throw std::runtime_error("checkpoint: invalid truncation");
    const auto layout = take<std::uint32_t>(buf, off);
    if (layout != kLayout) throw std::runtime_error("checkpoint: unknown coefficient layout");
    if (expected_m >= 0 && m != expected_m)
        throw std::runtime_error("checkpoint: truncation mismatch (file m=" + std::to_string(m) +
                                 ", context m=" + std::to_string(expected_m) +
                                 "; no silent padding)");

    CheckpointData data;
    data.state.t = take<double>(buf, off);
    data.params.nu = take<double>(buf, off);
    data.params.kappa = take<double>(buf, off);
    data.params.eps1 = take<double>(buf, off);
    data.params.eps2 = take<double>(buf, off);
    data.params.f0 = take<double>(buf, off);
    data.params.alpha = take<double>(buf, off);
    data.params.m = m;

    const size_t per_field = static_cast<size_t>(2 * m + 1) * (m + 1) * 2 * sizeof(double);
    if (buf.size() != kHeaderBytes + 3 * per_field)
        throw std::runtime_error("checkpoint: corrupt payload length in " + path.string());

    const double t = data.state.t;
    data.state.u = extract_field(buf, off, m, Parity::EvenZ);
    data.state.v = extract_field(buf, off, m, Parity::EvenZ);
    data.state.T = extract_field(buf, off, m, Parity::OddZ);
    data.state.t = t;

    const double sym = std::max({data.state.u.conjugate_symmetry_defect(),
                                 data.state.v.conjugate_symmetry_defect(),
                                 data.state.T.conjugate_symmetry_defect()});
    if (sym > 1e-10)
        throw std::runtime_error("checkpoint: conjugate symmetry violation (defect " +
                                 std::to_string(sym) + ")");
    const double comp = compatibility_defect(data.state.u);
    if (comp > 1e-10)
        throw std::runtime_error("checkpoint: compatibility violation (defect " +
                                 std::to_string(comp) + ")");
    return data;
}

}  // namespace pga
