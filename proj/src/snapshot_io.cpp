#include "sqg/snapshot_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "sqg/errors.hpp"

namespace sqg {
namespace {

constexpr char kMagic[4] = {'S', 'Q', 'G', 'S'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw IoError("truncated snapshot file: " + path);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
           std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

double get_f64(std::istream& in, const std::string& path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
        throw IoError("truncated snapshot file: " + path);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_snapshot(const std::string& path, const SpectralField& theta,
                   double time, double alpha, double kappa) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open snapshot file for writing: " + path);
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(theta.grid.n));
    put_f64(out, alpha);
    put_f64(out, kappa);
    put_f64(out, time);
    for (const Complex& c : theta.c) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
    }
    if (!out) throw IoError("failed writing snapshot file: " + path);
}

LoadedSnapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot file: " + path);
    char magic[4];
    if (!in.read(magic, 4)) throw IoError("truncated snapshot file: " + path);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("not a snapshot file (bad magic): " + path);
    const std::uint32_t version = get_u32(in, path);
    if (version != kVersion)
        throw IoError("unsupported snapshot version " + std::to_string(version) +
                      ": " + path);
    const std::uint32_t n = get_u32(in, path);
    GridSpec grid{16};
    try {
        grid = GridSpec(static_cast<int>(n));
    } catch (const ConfigError& e) {
        throw IoError("snapshot grid is invalid (" + std::string(e.what()) +
                      "): " + path);
    }
    LoadedSnapshot snap;
    snap.alpha = get_f64(in, path);
    snap.kappa = get_f64(in, path);
    snap.time = get_f64(in, path);
    snap.theta = SpectralField(grid);
    for (Complex& c : snap.theta.c) {
        const double re = get_f64(in, path);
        const double im = get_f64(in, path);
        c = Complex(re, im);
    }
    return snap;
}

}  // namespace sqg
