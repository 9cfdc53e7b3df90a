#pragma once

#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "l1cft/distractor.hpp"
#include "l1cft/features.hpp"
#include "l1cft/filter_bank.hpp"
#include "l1cft/keyfilter.hpp"
#include "l1cft/response.hpp"
#include "l1cft/scale_filter.hpp"
#include "l1cft/solver.hpp"
#include "l1cft/tensor.hpp"
#include "l1cft/types.hpp"

namespace l1cft {

// Which filter anchors the temporal regularizer.
enum class TemporalMode { none, aks, tr, fks };

TemporalMode temporal_mode_from_string(const std::string& s);  // throws BadSpec
std::string to_string(TemporalMode m);

struct TrackerConfig {
    double alpha = 0.019;       // model update rate
    double area_scale = 4.0;    // search region sides vs target sides
    int grid_m = 50;            // feature cells per side
    int grid_n = 50;
    int cell_size = 4;
    double output_sigma_factor = 1.0 / 16.0;

    // adaptive contextual learning
    bool acl = true;
    double eps = 0.1;
    int p_max = 4;
    bool mask_context = true;   // remove the target region from context patches
    bool frame1_acl = true;     // run the detection pass on the frame-1 self-response

    // keyfilter selection
    TemporalMode temporal = TemporalMode::aks;
    int pool_capacity = 15;
    int fks_period = 5;

    AdmmConfig admm;
    double omega_inside = 1e-3;
    double omega_outside = 0.1;

    int num_scales = 33;
    double scale_step = 1.02;
    double scale_learning_rate = 0.025;

    std::string cn_table_path;  // empty -> built-in table

    int search_px_w() const { return cell_size * grid_n; }
    int search_px_h() const { return cell_size * grid_m; }
    int template_px() const;
    FeatureConfig feature_config() const;
};

// Test hooks: a build with the flagged modules stubbed out must behave
// identically to the corresponding config; reaching a forbidden module throws.
struct ModuleStubs {
    bool forbid_distractor = false;
    bool forbid_keyfilter = false;
};

struct TrackerState {
    TrackerConfig config;
    FeatureConfig fconfig;
    FilterBank model;        // detection filter W_model
    FilterBank last_filter;  // last trained filter (temporal-regularizer anchor)
    KeyfilterPool pool;
    ScaleFilterState scale;
    LabelMap label;
    SpatialWeightMap omega;
    BoundingBox box;
    int frame_index = 1;
    ModuleStubs stubs;
};

// Result of the per-frame detection pass.
struct Detection {
    ResponseMap response;    // displacement-indexed, spectrum included
    BoundingBox box;         // translated (and rescaled) target box
    GridPoint displacement;  // subpixel displacement in cells
    ResponseGeometry geom;   // grid <-> pixel mapping of this response
};

// Frame-1 initialization: trains with lambda = 0 and, unless disabled, runs
// the distractor pass on the frame-1 self-response; seeds the pinned pool
// entry and the scale model.
TrackerState tracker_init(const cv::Mat& frame, const BoundingBox& box,
                          const TrackerConfig& cfg, ModuleStubs stubs = {});

// Response over the search region at the previous center, subpixel peak
// refinement, and scale estimation. Does not modify the state.
Detection tracker_detect(const TrackerState& state, const cv::Mat& frame);

// Distractor detection on the response, keyfilter selection, ADMM training,
// the exponential model update, pool update and scale-model update.
void tracker_train_and_update(TrackerState& state, const cv::Mat& frame, const Detection& det);

struct TrackResult {
    std::vector<BoundingBox> boxes;   // one per frame, frame 1 = init box
    std::vector<double> frame_ms;     // per-frame processing time
};

// One-pass tracking: init on frame 1, then detect + train per frame.
TrackResult track_sequence(const std::vector<cv::Mat>& frames, const BoundingBox& init_box,
                           const TrackerConfig& cfg, ModuleStubs stubs = {});

// Converts an 8-bit frame to the float [0,1] representation trackers consume.
cv::Mat to_float_image(const cv::Mat& frame);

}  // namespace l1cft
