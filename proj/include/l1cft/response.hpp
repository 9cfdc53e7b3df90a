#pragma once

#include <complex>
#include <vector>

#include "l1cft/tensor.hpp"

namespace l1cft {

// Real M x N correlation response. `data` is displacement-indexed (a target
// that did not move peaks at (0,0)); `spectrum`, when present, holds the
// channel-summed frequency-domain response used for subpixel refinement.
struct ResponseMap {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;
    std::vector<std::complex<double>> spectrum;

    ResponseMap() = default;
    ResponseMap(int m, int n) : rows(m), cols(n), data(static_cast<size_t>(m) * n, 0.0) {}

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
    bool finite() const;
};

// Detection response (Eq. of the response over a search region): the
// channel-summed product of the sample spectrum with the filter spectrum,
// inverse-transformed. Shapes must match.
ResponseMap correlation_response(const SpectrumTensor& zhat, const SpectrumTensor& what);

// Rearranges a displacement-indexed map so displacement 0 sits at
// (rows/2, cols/2), making the map image-like.
ResponseMap fftshifted(const ResponseMap& r);

// Signed displacement of i under circular indexing.
inline int signed_offset(int i, int n) { return i <= n / 2 ? i : i - n; }

struct GridPoint {
    double row = 0.0;
    double col = 0.0;
};

// Integer argmax of the response in signed-displacement coordinates.
GridPoint peak_displacement(const ResponseMap& r);

// Iterative trigonometric-interpolation ascent from the integer peak;
// requires the spectrum. Returns a signed subpixel displacement in cells.
GridPoint subpixel_peak(const ResponseMap& r, int max_iters = 5, double tol = 1e-4);

}  // namespace l1cft
