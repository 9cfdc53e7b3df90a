#include "l1cft/scale_filter.hpp"

#include <cmath>

#include <opencv2/imgproc.hpp>

#include "l1cft/features.hpp"
#include "l1cft/fft.hpp"
#include "l1cft/tensor.hpp"

namespace l1cft {

namespace {

// K x S matrix of scale-pyramid features: column s holds the windowed gray
// vector of the crop at scale step^(s - center).
std::vector<std::vector<double>> pyramid_features(const cv::Mat& frame, const BoundingBox& box,
                                                  const ScaleFilterState& st) {
    if (!box.valid() || box.w < 1.0 || box.h < 1.0)
        throw DegenerateBox("scale filter: degenerate target box");
    const int S = st.num_scales;
    const int center = (S - 1) / 2;
    const int K = st.feature_px * st.feature_px;
    const auto window = hann_vector(S);

    std::vector<std::vector<double>> f(static_cast<size_t>(K),
                                       std::vector<double>(static_cast<size_t>(S), 0.0));
    for (int s = 0; s < S; ++s) {
        const double factor = std::pow(st.scale_step, s - center);
        BoundingBox scaled{box.cx, box.cy, std::max(2.0, box.w * factor),
                           std::max(2.0, box.h * factor)};
        const ImagePatch patch = crop_patch(frame, scaled, 1.0, st.feature_px, st.feature_px);
        cv::Mat gray;
        if (patch.color())
            cv::cvtColor(patch.pixels, gray, cv::COLOR_BGR2GRAY);
        else
            gray = patch.pixels;
        int k = 0;
        for (int y = 0; y < st.feature_px; ++y) {
            const float* row = gray.ptr<float>(y);
            for (int x = 0; x < st.feature_px; ++x)
                f[static_cast<size_t>(k++)][static_cast<size_t>(s)] =
                    (row[x] - 0.5) * window[static_cast<size_t>(s)];
        }
    }
    return f;
}

std::vector<std::complex<double>> scale_label_spectrum(const ScaleFilterState& st) {
    const int S = st.num_scales;
    const int center = (S - 1) / 2;
    const double sigma = std::max(1e-6, st.sigma_factor * std::sqrt(static_cast<double>(S)));
    std::vector<double> g(static_cast<size_t>(S), 0.0);
    for (int s = 0; s < S; ++s) {
        const double d = s - center;
        g[static_cast<size_t>(s)] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    std::vector<std::complex<double>> ghat;
    dft_1d(g, ghat);
    return ghat;
}

}  // namespace

void update_scale_model(const cv::Mat& frame, const BoundingBox& box, ScaleFilterState& st) {
    if (st.num_scales < 1 || st.num_scales % 2 == 0)
        throw BadGeometry("scale filter: num_scales must be odd and positive");
    const auto feats = pyramid_features(frame, box, st);
    const auto ghat = scale_label_spectrum(st);
    const int S = st.num_scales;
    const size_t K = feats.size();

    std::vector<std::vector<std::complex<double>>> num(K);
    std::vector<std::complex<double>> den(static_cast<size_t>(S), {0.0, 0.0});
    std::vector<std::complex<double>> fhat;
    for (size_t k = 0; k < K; ++k) {
        dft_1d(feats[k], fhat);
        num[k].resize(static_cast<size_t>(S));
        for (int s = 0; s < S; ++s) {
            const auto c = fhat[static_cast<size_t>(s)];
            num[k][static_cast<size_t>(s)] = std::conj(c) * ghat[static_cast<size_t>(s)];
            den[static_cast<size_t>(s)] += std::conj(c) * c;
        }
    }

    if (!st.trained || st.learning_rate >= 1.0) {
        st.model_numerator = std::move(num);
        st.model_denominator = std::move(den);
        st.trained = true;
        return;
    }
    const double eta = st.learning_rate;
    if (eta <= 0.0) return;  // rate 0 keeps the model untouched
    for (size_t k = 0; k < K; ++k)
        for (int s = 0; s < S; ++s)
            st.model_numerator[k][static_cast<size_t>(s)] =
                (1.0 - eta) * st.model_numerator[k][static_cast<size_t>(s)] +
                eta * num[k][static_cast<size_t>(s)];
    for (int s = 0; s < S; ++s)
        st.model_denominator[static_cast<size_t>(s)] =
            (1.0 - eta) * st.model_denominator[static_cast<size_t>(s)] +
            eta * den[static_cast<size_t>(s)];
}

std::vector<double> scale_response(const cv::Mat& frame, const BoundingBox& box,
                                   const ScaleFilterState& st) {
    const auto feats = pyramid_features(frame, box, st);
    const int S = st.num_scales;
    std::vector<std::complex<double>> rhat(static_cast<size_t>(S), {0.0, 0.0});
    std::vector<std::complex<double>> fhat;
    for (size_t k = 0; k < feats.size(); ++k) {
        dft_1d(feats[k], fhat);
        for (int s = 0; s < S; ++s)
            rhat[static_cast<size_t>(s)] +=
                fhat[static_cast<size_t>(s)] * st.model_numerator[k][static_cast<size_t>(s)];
    }
    for (int s = 0; s < S; ++s)
        rhat[static_cast<size_t>(s)] /=
            st.model_denominator[static_cast<size_t>(s)] + st.lambda;
    std::vector<double> r;
    idft_1d(rhat, r);
    return r;
}

double estimate_scale(const cv::Mat& frame, const BoundingBox& box, const ScaleFilterState& st) {
    if (!box.valid() || box.w < 1.0 || box.h < 1.0)
        throw DegenerateBox("estimate_scale: degenerate target box");
    if (st.num_scales <= 1 || !st.trained) return 1.0;
    const auto r = scale_response(frame, box, st);
    int best = 0;
    for (int s = 1; s < st.num_scales; ++s)
        if (r[static_cast<size_t>(s)] > r[static_cast<size_t>(best)]) best = s;
    const int center = (st.num_scales - 1) / 2;
    return std::pow(st.scale_step, best - center);
}

}  // namespace l1cft
