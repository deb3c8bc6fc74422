#ifndef SQG_TRANSFORM_HPP
#define SQG_TRANSFORM_HPP

#include "sqg/field.hpp"

namespace sqg {

// Inverse transform: coefficients -> node values (real part).
PhysicalField to_physical(const SpectralField& f);

// Forward transform: node values -> coefficients, normalized by 1/n^2.
SpectralField to_spectral(const PhysicalField& g);

// Largest imaginary node value left over by the inverse transform, relative
// to the largest field magnitude; measures conjugate-symmetry violation.
double imag_residue(const SpectralField& f);

}  // namespace sqg

#endif
