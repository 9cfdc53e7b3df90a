#pragma once

#include <complex>
#include <vector>

#include "l1cft/types.hpp"

namespace l1cft {

// Real M x N x D array of feature-cell values, plane-major storage
// (channel planes are contiguous, row-major inside a plane).
struct FeatureTensor {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    int cell_size = 1;
    std::vector<double> data;

    FeatureTensor() = default;
    FeatureTensor(int m, int n, int d, int cell = 1)
        : rows(m), cols(n), channels(d), cell_size(cell),
          data(static_cast<size_t>(m) * n * d, 0.0) {
        if (m < 1 || n < 1 || d < 1 || cell < 1)
            throw BadGeometry("FeatureTensor: dimensions must be >= 1");
    }

    size_t plane_size() const { return static_cast<size_t>(rows) * cols; }
    size_t size() const { return data.size(); }

    double& at(int m, int n, int d) {
        return data[static_cast<size_t>(d) * plane_size() + static_cast<size_t>(m) * cols + n];
    }
    double at(int m, int n, int d) const {
        return data[static_cast<size_t>(d) * plane_size() + static_cast<size_t>(m) * cols + n];
    }
    double* plane(int d) { return data.data() + static_cast<size_t>(d) * plane_size(); }
    const double* plane(int d) const { return data.data() + static_cast<size_t>(d) * plane_size(); }

    bool same_shape(const FeatureTensor& o) const {
        return rows == o.rows && cols == o.cols && channels == o.channels;
    }
    bool finite() const;
};

// Complex-valued spectrum with the same shape as the originating tensor.
struct SpectrumTensor {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    std::vector<std::complex<double>> data;

    SpectrumTensor() = default;
    SpectrumTensor(int m, int n, int d)
        : rows(m), cols(n), channels(d),
          data(static_cast<size_t>(m) * n * d, std::complex<double>(0.0, 0.0)) {
        if (m < 1 || n < 1 || d < 1)
            throw BadGeometry("SpectrumTensor: dimensions must be >= 1");
    }

    size_t plane_size() const { return static_cast<size_t>(rows) * cols; }
    size_t size() const { return data.size(); }

    std::complex<double>& at(int m, int n, int d) {
        return data[static_cast<size_t>(d) * plane_size() + static_cast<size_t>(m) * cols + n];
    }
    std::complex<double> at(int m, int n, int d) const {
        return data[static_cast<size_t>(d) * plane_size() + static_cast<size_t>(m) * cols + n];
    }
    std::complex<double>* plane(int d) {
        return data.data() + static_cast<size_t>(d) * plane_size();
    }
    const std::complex<double>* plane(int d) const {
        return data.data() + static_cast<size_t>(d) * plane_size();
    }

    bool same_shape(const SpectrumTensor& o) const {
        return rows == o.rows && cols == o.cols && channels == o.channels;
    }
};

// Real M x N regression target. The peak sits at index (0,0), i.e. the map
// is circularly shifted so a zero-displacement response aligns with it.
struct LabelMap {
    int rows = 0;
    int cols = 0;
    double sigma = 0.0;
    std::vector<double> data;

    LabelMap() = default;
    LabelMap(int m, int n, double s)
        : rows(m), cols(n), sigma(s), data(static_cast<size_t>(m) * n, 0.0) {}

    double& at(int m, int n) { return data[static_cast<size_t>(m) * cols + n]; }
    double at(int m, int n) const { return data[static_cast<size_t>(m) * cols + n]; }
};

// Gaussian label with signed circular offsets from the peak; peak value 1 at (0,0).
LabelMap gaussian_label(int m, int n, double sigma);

// Separable symmetric Hann window (K-1 denominator); 1x1 windows are 1.
LabelMap cosine_window(int m, int n);

// 1-D symmetric Hann vector, the factor used by cosine_window.
std::vector<double> hann_vector(int k);

// Element-wise algebra on spectra. Shapes must match.
SpectrumTensor hadamard(const SpectrumTensor& a, const SpectrumTensor& b);
// conj(a) * b, element-wise; inverse-transforming the result of two real
// signals' spectra yields their circular cross-correlation.
SpectrumTensor conj_hadamard(const SpectrumTensor& a, const SpectrumTensor& b);
// a / (b + floor), element-wise; floor guards degenerate denominators.
SpectrumTensor elementwise_div(const SpectrumTensor& a, const SpectrumTensor& b, double floor);

FeatureTensor hadamard(const FeatureTensor& a, const FeatureTensor& b);

}  // namespace l1cft
