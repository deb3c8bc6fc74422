#include "sqg/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace sqg {
namespace {

// One forward and one backward c2c plan per grid size. Plans are created with
// FFTW_UNALIGNED so the new-array execute functions accept ordinary vector
// storage; creation is serialized (the FFTW planner is not thread safe),
// execution on distinct buffers is.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Complex> scratch(std::size_t(n) * n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair pair;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pair.fwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD, flags);
    pair.bwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_BACKWARD, flags);
    return cache.emplace(n, pair).first->second;
}

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
    const int n = f.grid.n;
    std::vector<Complex> work = f.c;
    auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
    fftw_execute_dft(plans_for(n).bwd, ptr, ptr);

    PhysicalField out(f.grid);
    for (std::size_t i = 0; i < work.size(); ++i) out.v[i] = work[i].real();
    return out;
}

SpectralField to_spectral(const PhysicalField& g) {
    const int n = g.grid.n;
    SpectralField out(g.grid);
    for (std::size_t i = 0; i < g.v.size(); ++i) out.c[i] = Complex(g.v[i], 0.0);
    auto* ptr = reinterpret_cast<fftw_complex*>(out.c.data());
    fftw_execute_dft(plans_for(n).fwd, ptr, ptr);

    const double scale = 1.0 / (double(n) * double(n));
    out.scale(scale);
    return out;
}

double imag_residue(const SpectralField& f) {
    const int n = f.grid.n;
    std::vector<Complex> work = f.c;
    auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
    fftw_execute_dft(plans_for(n).bwd, ptr, ptr);

    double worst_imag = 0.0, peak = 0.0;
    for (const auto& z : work) {
        worst_imag = std::max(worst_imag, std::abs(z.imag()));
        peak = std::max(peak, std::abs(z));
    }
    return peak > 0.0 ? worst_imag / peak : 0.0;
}

}  // namespace sqg
