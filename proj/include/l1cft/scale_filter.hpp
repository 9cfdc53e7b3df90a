#pragma once

#include <complex>
#include <vector>

#include <opencv2/core.hpp>

#include "l1cft/types.hpp"

namespace l1cft {

// One-dimensional correlation filter over a pyramid of scaled target crops.
// Each crop is reduced to a fixed-length gray feature vector; a per-feature
// MOSSE-style filter over the scale axis locates the best-matching scale.
struct ScaleFilterState {
    int num_scales = 33;        // odd, symmetric pyramid
    double scale_step = 1.02;
    double learning_rate = 0.025;
    double sigma_factor = 0.25; // label bandwidth = sigma_factor * sqrt(S)
    double lambda = 0.01;
    int feature_px = 16;        // each crop is resized to feature_px^2 grays
    double current_scale = 1.0;
    bool trained = false;

    // Per-feature numerator spectra (K x S) and the shared denominator (S).
    std::vector<std::vector<std::complex<double>>> model_numerator;
    std::vector<std::complex<double>> model_denominator;
};

// Correlates the scale pyramid at `box` with the model and returns the scale
// factor of the maximum response (1.0 for untrained or single-scale states).
double estimate_scale(const cv::Mat& frame, const BoundingBox& box, const ScaleFilterState& state);

// Exponential numerator/denominator update with state.learning_rate; the
// first call installs the fresh single-frame model.
void update_scale_model(const cv::Mat& frame, const BoundingBox& box, ScaleFilterState& state);

// Scale response over the pyramid (used by estimate_scale and tests).
std::vector<double> scale_response(const cv::Mat& frame, const BoundingBox& box,
                                   const ScaleFilterState& state);

}  // namespace l1cft
