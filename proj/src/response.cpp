#include "l1cft/response.hpp"

#include <cmath>

#include "l1cft/fft.hpp"

namespace l1cft {

bool ResponseMap::finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

ResponseMap correlation_response(const SpectrumTensor& zhat, const SpectrumTensor& what) {
    if (!zhat.same_shape(what)) throw ShapeMismatch("correlation_response: shapes differ");
    SpectrumTensor sum(zhat.rows, zhat.cols, 1);
    for (int d = 0; d < zhat.channels; ++d) {
        const std::complex<double>* z = zhat.plane(d);
        const std::complex<double>* w = what.plane(d);
        for (size_t i = 0; i < sum.plane_size(); ++i) sum.data[i] += z[i] * w[i];
    }
    ResponseMap r(zhat.rows, zhat.cols);
    const FeatureTensor spatial = inverse_dft_unchecked(sum);
    r.data = spatial.data;
    r.spectrum = std::move(sum.data);
    return r;
}

ResponseMap fftshifted(const ResponseMap& r) {
    ResponseMap out(r.rows, r.cols);
    const int hr = r.rows / 2, hc = r.cols / 2;
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j)
            out.at(i, j) = r.at((i + r.rows - hr) % r.rows, (j + r.cols - hc) % r.cols);
    return out;
}

GridPoint peak_displacement(const ResponseMap& r) {
    int bi = 0, bj = 0;
    double best = r.at(0, 0);
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j)
            if (r.at(i, j) > best) {
                best = r.at(i, j);
                bi = i;
                bj = j;
            }
    return {static_cast<double>(signed_offset(bi, r.rows)),
            static_cast<double>(signed_offset(bj, r.cols))};
}

namespace {

struct TrigEval {
    double value, du, dv, duu, dvv, duv;
};

// Evaluates the trigonometric interpolant of the response and its first and
// second derivatives at subpixel displacement (u, v).
TrigEval eval_trig(const ResponseMap& r, double u, double v) {
    const int M = r.rows, N = r.cols;
    TrigEval e{};
    const double cu = 2.0 * M_PI / M, cv = 2.0 * M_PI / N;
    for (int k = 0; k < M; ++k) {
        const double fk = cu * signed_offset(k, M);
        for (int l = 0; l < N; ++l) {
            const double fl = cv * signed_offset(l, N);
            const std::complex<double> c = r.spectrum[static_cast<size_t>(k) * N + l];
            const double phase = fk * u + fl * v;
            const double re = c.real() * std::cos(phase) - c.imag() * std::sin(phase);
            const double im = c.real() * std::sin(phase) + c.imag() * std::cos(phase);
            e.value += re;
            e.du += -im * fk;
            e.dv += -im * fl;
            e.duu += -re * fk * fk;
            e.dvv += -re * fl * fl;
            e.duv += -re * fk * fl;
        }
    }
    const double scale = 1.0 / (M * N);
    e.value *= scale;
    e.du *= scale;
    e.dv *= scale;
    e.duu *= scale;
    e.dvv *= scale;
    e.duv *= scale;
    return e;
}

}  // namespace

GridPoint subpixel_peak(const ResponseMap& r, int max_iters, double tol) {
    GridPoint p = peak_displacement(r);
    if (r.spectrum.size() != static_cast<size_t>(r.rows) * r.cols) return p;
    double u = p.row, v = p.col;
    for (int it = 0; it < max_iters; ++it) {
        const TrigEval e = eval_trig(r, u, v);
        const double det = e.duu * e.dvv - e.duv * e.duv;
        double su, sv;
        if (det > 0.0 && e.duu < 0.0) {
            su = -(e.dvv * e.du - e.duv * e.dv) / det;
            sv = -(-e.duv * e.du + e.duu * e.dv) / det;
        } else {
            break;  // not a proper maximum; keep the grid estimate
        }
        const double norm = std::hypot(su, sv);
        if (norm > 1.0) {  // never leave the neighbouring cell in one step
            su /= norm;
            sv /= norm;
        }
        u += su;
        v += sv;
        if (std::hypot(su, sv) < tol) break;
    }
    // A refinement that wandered off is worse than the grid argmax.
    if (std::abs(u - p.row) > 1.5 || std::abs(v - p.col) > 1.5) return p;
    return {u, v};
}

}  // namespace l1cft
