#pragma once

#include <functional>
#include <utility>

#include "blowuplab/field.hpp"

namespace blowuplab {
namespace spectral {

/// Unnormalized forward DFT (FFTW sign -1).
Field2D forward(const Field2D& f);
/// Inverse DFT including the 1/m^2 normalization.
Field2D backward(const Field2D& fhat);

/// Multiply the spectrum by sym(kx, ky) and transform back.
Field2D apply_symbol(const Field2D& f, const std::function<cplx(double, double)>& sym);

Field2D laplacian(const Field2D& f);
/// (d/dx f, d/dy f); first-derivative symbols vanish on the Nyquist line.
std::pair<Field2D, Field2D> gradient(const Field2D& f);
/// Mass-critical 2D scaling generator: f + y . grad f.
Field2D scaling_generator(const Field2D& f);

/// (l2, h1) with the gradient part summed on the Fourier side.
std::pair<double, double> norms(const Field2D& f);

/// ||f||_2 evaluated from the Fourier coefficients (Parseval route).
double l2_norm_fourier(const Field2D& f);

/// Zero-padded spectral refinement by a power-of-two factor.
Field2D upsample(const Field2D& f, std::size_t factor);

}  // namespace spectral
}  // namespace blowuplab
