#pragma once

#include "l1cft/tensor.hpp"

namespace l1cft {

// Per-channel unnormalized 2-D forward DFT.
SpectrumTensor forward_dft(const FeatureTensor& t);

// Normalized (1/(M*N)) inverse of forward_dft. The input must be the
// spectrum of a real tensor; throws ImaginaryResidueTooLarge when the
// imaginary residue exceeds 1e-8 of the real norm (a corrupted spectrum).
FeatureTensor inverse_dft(const SpectrumTensor& s);

// Inverse without the conjugate-symmetry check, for spectra that are
// products of a spectrum with a conjugated one (always real up to roundoff).
FeatureTensor inverse_dft_unchecked(const SpectrumTensor& s);

// Single-plane helpers used by the 1-D scale filter.
void dft_1d(const std::vector<double>& in, std::vector<std::complex<double>>& out);
void idft_1d(const std::vector<std::complex<double>>& in, std::vector<double>& out);

}  // namespace l1cft
