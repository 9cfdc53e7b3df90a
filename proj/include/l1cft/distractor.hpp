#pragma once

#include <vector>

#include <opencv2/core.hpp>

#include "l1cft/features.hpp"
#include "l1cft/response.hpp"
#include "l1cft/tensor.hpp"
#include "l1cft/types.hpp"

namespace l1cft {

// One detected background distractor.
struct Distractor {
    BoundingBox box;        // pixel coordinates
    double weight = 0.0;    // response peak * exp(-dist/16), in (0,1]
    FeatureTensor features; // extracted from the target-masked frame
};

struct DistractorSet {
    std::vector<Distractor> items;
    bool empty() const { return items.empty(); }
    size_t size() const { return items.size(); }
};

struct LocalMax {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// Points whose value is >= all existing 8-neighbors (no circular indexing),
// sorted by value descending with row-major order breaking ties.
std::vector<LocalMax> local_maxima(const ResponseMap& resp);

// Result of the grid-space detection loop.
struct GridDetection {
    int row = 0;
    int col = 0;
    double value = 0.0;   // normalized response at the peak
    double dist = 0.0;    // Euclidean distance to the target center, in cells
    double weight = 0.0;  // value * exp(-dist/16)
};

// Core of the adaptive distractor detection on an image-like response map
// (target at `target_cells`, a box in grid-cell units). Normalizes by the
// global maximum, then repeatedly takes the highest remaining local maximum:
// stops once it drops to eps or p_max points are accepted; candidates whose
// center lies inside the target box or an accepted box are rejected. A
// box-sized neighborhood around every processed peak is zeroed so a blob
// cannot re-fire. A degenerate (all-zero / non-finite) map yields no points.
std::vector<GridDetection> detect_distractor_points(const ResponseMap& resp,
                                                    const BoundingBox& target_cells,
                                                    double eps, int p_max);

// Returns a copy of the frame with the pixels inside b_obj set to zero.
cv::Mat mask_target(const cv::Mat& frame, const BoundingBox& b_obj);

// Maps between response-grid cells and frame pixels.
struct ResponseGeometry {
    int rows = 0;
    int cols = 0;
    double px_per_cell_x = 1.0;
    double px_per_cell_y = 1.0;
    double origin_x = 0.0;  // pixel position of grid cell (rows/2, cols/2)
    double origin_y = 0.0;

    double pixel_x(double col) const { return origin_x + (col - cols / 2) * px_per_cell_x; }
    double pixel_y(double row) const { return origin_y + (row - rows / 2) * px_per_cell_y; }
    double cell_x(double px) const { return cols / 2 + (px - origin_x) / px_per_cell_x; }
    double cell_y(double py) const { return rows / 2 + (py - origin_y) / px_per_cell_y; }
};

// Full detection: runs the grid-space core on the (image-like) response,
// then crops a context patch of search_w x search_h pixels around every
// accepted point from the target-masked frame (unmasked when mask_region is
// off) and extracts its feature stack at out_w x out_h.
DistractorSet detect_distractors(const ResponseMap& resp_centered, const ResponseGeometry& geom,
                                 const BoundingBox& b_obj, const cv::Mat& frame, double eps,
                                 int p_max, int search_w, int search_h, int out_w, int out_h,
                                 const FeatureConfig& fcfg, bool mask_region = true);

}  // namespace l1cft
