#pragma once

#include <string>

#include "sqg/field.hpp"

namespace sqg {

// Binary spectral snapshot, little-endian:
//   bytes 0..3   magic "SQGS"
//   u32          format version (1)
//   u32          grid size n
//   f64          alpha, kappa, time
//   n*n pairs    (re, im) f64 coefficients, first index fastest
struct LoadedSnapshot {
    SpectralField theta{GridSpec{16}};
    double time = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
};

void save_snapshot(const std::string& path, const SpectralField& theta,
                   double time, double alpha, double kappa);

LoadedSnapshot load_snapshot(const std::string& path);

}  // namespace sqg
