#pragma once

#include <string>
#include <vector>

#include "l1cft/types.hpp"

namespace l1cft {

// Euclidean center distance in pixels.
double cle(const BoundingBox& pred, const BoundingBox& gt);

// Intersection area over union area, in [0,1].
double iou(const BoundingBox& pred, const BoundingBox& gt);

struct EvalSummary {
    std::string sequence;
    std::string config;
    size_t frames = 0;
    std::vector<double> cle_series;
    std::vector<double> iou_series;
    double dp_at_20 = 0.0;                // fraction of frames with CLE <= 20 px
    double op_at_50 = 0.0;                // fraction of frames with IoU > 0.5
    double auc = 0.0;                     // mean of the success-curve samples
    double fps = 0.0;
    std::vector<double> precision_curve;  // 51 points, thresholds 0..50 px
    std::vector<double> success_curve;    // 21 points, IoU thresholds 0..1
};

// Aggregates CLE/IoU series into the OPE summary. Throws EmptySeries.
EvalSummary summarize(std::vector<double> cle_series, std::vector<double> iou_series,
                      double fps = 0.0);

// Convenience wrapper over box trajectories (lengths must match).
EvalSummary summarize_boxes(const std::vector<BoundingBox>& pred,
                            const std::vector<BoundingBox>& gt, double fps = 0.0);

}  // namespace l1cft
