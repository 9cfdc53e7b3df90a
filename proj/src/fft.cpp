#include "l1cft/fft.hpp"

#include <opencv2/core.hpp>

namespace l1cft {

SpectrumTensor forward_dft(const FeatureTensor& t) {
    SpectrumTensor s(t.rows, t.cols, t.channels);
    for (int d = 0; d < t.channels; ++d) {
        const cv::Mat src(t.rows, t.cols, CV_64F, const_cast<double*>(t.plane(d)));
        cv::Mat dst(t.rows, t.cols, CV_64FC2, reinterpret_cast<double*>(s.plane(d)));
        cv::dft(src, dst, cv::DFT_COMPLEX_OUTPUT);
    }
    return s;
}

static FeatureTensor inverse_impl(const SpectrumTensor& s, FeatureTensor& out, double* imag_sq, double* real_sq) {
    cv::Mat dst(s.rows, s.cols, CV_64FC2);
    *imag_sq = 0.0;
    *real_sq = 0.0;
    for (int d = 0; d < s.channels; ++d) {
        const cv::Mat src(s.rows, s.cols, CV_64FC2,
                          const_cast<std::complex<double>*>(s.plane(d)));
        cv::dft(src, dst, cv::DFT_INVERSE | cv::DFT_SCALE | cv::DFT_COMPLEX_OUTPUT);
        double* op = out.plane(d);
        for (int i = 0; i < s.rows; ++i) {
            const double* row = dst.ptr<double>(i);
            for (int j = 0; j < s.cols; ++j) {
                const double re = row[2 * j];
                const double im = row[2 * j + 1];
                op[static_cast<size_t>(i) * s.cols + j] = re;
                *real_sq += re * re;
                *imag_sq += im * im;
            }
        }
    }
    return out;
}

FeatureTensor inverse_dft(const SpectrumTensor& s) {
    FeatureTensor out(s.rows, s.cols, s.channels);
    double imag_sq = 0.0, real_sq = 0.0;
    inverse_impl(s, out, &imag_sq, &real_sq);
    const double real_norm = std::sqrt(real_sq);
    const double imag_norm = std::sqrt(imag_sq);
    if (imag_norm > 1e-8 * std::max(real_norm, 1.0))
        throw ImaginaryResidueTooLarge("inverse_dft: imaginary residue " +
                                       std::to_string(imag_norm) + " vs real norm " +
                                       std::to_string(real_norm));
    return out;
}

FeatureTensor inverse_dft_unchecked(const SpectrumTensor& s) {
    FeatureTensor out(s.rows, s.cols, s.channels);
    double imag_sq = 0.0, real_sq = 0.0;
    inverse_impl(s, out, &imag_sq, &real_sq);
    return out;
}

void dft_1d(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
    const int n = static_cast<int>(in.size());
    out.assign(static_cast<size_t>(n), {0.0, 0.0});
    const cv::Mat src(1, n, CV_64F, const_cast<double*>(in.data()));
    cv::Mat dst(1, n, CV_64FC2, reinterpret_cast<double*>(out.data()));
    cv::dft(src, dst, cv::DFT_COMPLEX_OUTPUT | cv::DFT_ROWS);
}

void idft_1d(const std::vector<std::complex<double>>& in, std::vector<double>& out) {
    const int n = static_cast<int>(in.size());
    const cv::Mat src(1, n, CV_64FC2, const_cast<std::complex<double>*>(in.data()));
    cv::Mat dst(1, n, CV_64FC2);
    cv::dft(src, dst, cv::DFT_INVERSE | cv::DFT_SCALE | cv::DFT_COMPLEX_OUTPUT | cv::DFT_ROWS);
    out.assign(static_cast<size_t>(n), 0.0);
    const double* p = dst.ptr<double>(0);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = p[2 * i];
}

}  // namespace l1cft
