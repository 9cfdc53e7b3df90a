#include "l1cft/tensor.hpp"

#include <cmath>

namespace l1cft {

bool FeatureTensor::finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

LabelMap gaussian_label(int m, int n, double sigma) {
    if (m < 1 || n < 1) throw BadGeometry("gaussian_label: dims must be >= 1");
    if (!(sigma > 0.0)) throw BadGeometry("gaussian_label: sigma must be > 0");
    LabelMap y(m, n, sigma);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int i = 0; i < m; ++i) {
        // Signed circular offset from the peak at index 0.
        const double di = (i <= m / 2) ? i : i - m;
        for (int j = 0; j < n; ++j) {
            const double dj = (j <= n / 2) ? j : j - n;
            y.at(i, j) = std::exp(-(di * di + dj * dj) * inv);
        }
    }
    return y;
}

std::vector<double> hann_vector(int k) {
    std::vector<double> w(static_cast<size_t>(k), 1.0);
    if (k == 1) return w;  // degenerate window is 1 by convention
    const double denom = static_cast<double>(k - 1);
    for (int i = 0; i < k; ++i)
        w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / denom);
    return w;
}

LabelMap cosine_window(int m, int n) {
    if (m < 1 || n < 1) throw BadGeometry("cosine_window: dims must be >= 1");
    LabelMap w(m, n, 0.0);
    const auto wm = hann_vector(m);
    const auto wn = hann_vector(n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) w.at(i, j) = wm[static_cast<size_t>(i)] * wn[static_cast<size_t>(j)];
    return w;
}

static void check_shape(const SpectrumTensor& a, const SpectrumTensor& b, const char* op) {
    if (!a.same_shape(b)) throw ShapeMismatch(std::string(op) + ": tensor shapes differ");
}

SpectrumTensor hadamard(const SpectrumTensor& a, const SpectrumTensor& b) {
    check_shape(a, b, "hadamard");
    SpectrumTensor out(a.rows, a.cols, a.channels);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] * b.data[i];
    return out;
}

SpectrumTensor conj_hadamard(const SpectrumTensor& a, const SpectrumTensor& b) {
    check_shape(a, b, "conj_hadamard");
    SpectrumTensor out(a.rows, a.cols, a.channels);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = std::conj(a.data[i]) * b.data[i];
    return out;
}

SpectrumTensor elementwise_div(const SpectrumTensor& a, const SpectrumTensor& b, double floor) {
    check_shape(a, b, "elementwise_div");
    SpectrumTensor out(a.rows, a.cols, a.channels);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] / (b.data[i] + floor);
    return out;
}

FeatureTensor hadamard(const FeatureTensor& a, const FeatureTensor& b) {
    if (!a.same_shape(b)) throw ShapeMismatch("hadamard: tensor shapes differ");
    FeatureTensor out(a.rows, a.cols, a.channels, a.cell_size);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] * b.data[i];
    return out;
}

}  // namespace l1cft
