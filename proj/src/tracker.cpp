#include "l1cft/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <opencv2/imgproc.hpp>

namespace l1cft {

TemporalMode temporal_mode_from_string(const std::string& s) {
    if (s == "none") return TemporalMode::none;
    if (s == "aks") return TemporalMode::aks;
    if (s == "tr") return TemporalMode::tr;
    if (s == "fks") return TemporalMode::fks;
    throw BadSpec("unknown temporal mode: " + s);
}

std::string to_string(TemporalMode m) {
    switch (m) {
        case TemporalMode::none: return "none";
        case TemporalMode::aks: return "aks";
        case TemporalMode::tr: return "tr";
        case TemporalMode::fks: return "fks";
    }
    return "none";
}

int TrackerConfig::template_px() const {
    const int cells = std::max(2, static_cast<int>(std::lround(grid_m / area_scale)));
    return cells * cell_size;
}

FeatureConfig TrackerConfig::feature_config() const {
    FeatureConfig f;
    f.cell_size = cell_size;
    f.window = true;
    if (!cn_table_path.empty())
        f.cn_table = std::make_shared<const ColorNameTable>(ColorNameTable::load(cn_table_path));
    return f;
}

namespace {

BoundingBox clamp_center(BoundingBox b, const cv::Mat& frame) {
    b.cx = std::clamp(b.cx, 1.0, static_cast<double>(frame.cols));
    b.cy = std::clamp(b.cy, 1.0, static_cast<double>(frame.rows));
    return b;
}

FeatureTensor search_features(const TrackerState& st, const cv::Mat& frame,
                              const BoundingBox& box) {
    const ImagePatch patch = crop_patch(frame, box, st.config.area_scale,
                                        st.config.search_px_w(), st.config.search_px_h());
    return extract_stack(patch, st.fconfig);
}

FeatureTensor template_features(const TrackerState& st, const cv::Mat& frame,
                                const BoundingBox& box) {
    const int tpx = st.config.template_px();
    const ImagePatch patch = crop_patch(frame, box, 1.0, tpx, tpx);
    return extract_stack(patch, st.fconfig);
}

ResponseGeometry make_geometry(const TrackerState& st, const BoundingBox& box) {
    ResponseGeometry g;
    g.rows = st.config.grid_m;
    g.cols = st.config.grid_n;
    const double sw = std::lround(box.w * st.config.area_scale);
    const double sh = std::lround(box.h * st.config.area_scale);
    g.px_per_cell_x = st.config.cell_size * sw / st.config.search_px_w();
    g.px_per_cell_y = st.config.cell_size * sh / st.config.search_px_h();
    g.origin_x = box.cx;
    g.origin_y = box.cy;
    return g;
}

DistractorSet run_distractor_pass(const TrackerState& st, const cv::Mat& frame,
                                  const ResponseMap& response, const ResponseGeometry& geom,
                                  const BoundingBox& b_obj) {
    if (st.stubs.forbid_distractor)
        throw TrackError("distractor module invoked while stubbed out");
    const int sw = static_cast<int>(std::lround(b_obj.w * st.config.area_scale));
    const int sh = static_cast<int>(std::lround(b_obj.h * st.config.area_scale));
    return detect_distractors(fftshifted(response), geom, b_obj, frame, st.config.eps,
                              st.config.p_max, sw, sh, st.config.search_px_w(),
                              st.config.search_px_h(), st.fconfig, st.config.mask_context);
}

SolveResult train_filter(const TrackerState& st, const FeatureTensor& x,
                         const DistractorSet& distractors, const FilterBank* keyfilter,
                         double lambda) {
    TrainingProblem p;
    p.x = &x;
    p.y = &st.label;
    p.omega = &st.omega;
    p.cfg = st.config.admm;
    p.cfg.lambda = lambda;
    p.keyfilter = keyfilter;
    for (const auto& d : distractors.items) p.distractors.push_back({&d.features, d.weight});
    return solve(p);
}

const FilterBank* choose_keyfilter(const TrackerState& st, const FeatureTensor& f_cur) {
    switch (st.config.temporal) {
        case TemporalMode::none:
            return nullptr;
        case TemporalMode::tr:
            return &st.last_filter;
        case TemporalMode::aks:
            if (st.stubs.forbid_keyfilter)
                throw TrackError("keyfilter module invoked while stubbed out");
            return &select_keyfilter(f_cur, st.pool);
        case TemporalMode::fks:
            if (st.stubs.forbid_keyfilter)
                throw TrackError("keyfilter module invoked while stubbed out");
            return &select_periodic(st.pool, st.config.fks_period);
    }
    return nullptr;
}

bool uses_pool(const TrackerConfig& cfg) {
    return cfg.temporal == TemporalMode::aks || cfg.temporal == TemporalMode::fks;
}

}  // namespace

TrackerState tracker_init(const cv::Mat& frame, const BoundingBox& box, const TrackerConfig& cfg,
                          ModuleStubs stubs) {
    if (!box.valid()) throw BadBox("tracker_init: invalid box");
    if (frame.empty()) throw BadBox("tracker_init: empty frame");
    if (box.cx < 1 || box.cx > frame.cols || box.cy < 1 || box.cy > frame.rows)
        throw BadBox("tracker_init: box center outside the frame");

    TrackerState st;
    st.config = cfg;
    st.fconfig = cfg.feature_config();
    st.stubs = stubs;
    st.pool = KeyfilterPool(cfg.pool_capacity);
    st.box = box;
    st.frame_index = 1;
    st.label = gaussian_label(cfg.grid_m, cfg.grid_n,
                              std::sqrt(static_cast<double>(cfg.grid_m) * cfg.grid_n) *
                                  cfg.output_sigma_factor);
    st.omega = make_spatial_weights(cfg.grid_m, cfg.grid_n, cfg.area_scale, cfg.omega_inside,
                                    cfg.omega_outside);
    st.scale.num_scales = cfg.num_scales;
    st.scale.scale_step = cfg.scale_step;
    st.scale.learning_rate = cfg.scale_learning_rate;

    // No keyfilter exists yet: the first training round runs with lambda = 0.
    const FeatureTensor x = search_features(st, frame, box);
    SolveResult trained = train_filter(st, x, {}, nullptr, 0.0);

    if (cfg.acl && cfg.frame1_acl && !stubs.forbid_distractor) {
        // Detection pass on the frame itself with the fresh filter; any
        // distractors it finds feed one retraining round.
        const FilterBank fresh(trained.filter);
        const ResponseMap resp = correlation_response(forward_dft(x), fresh.spectrum());
        const DistractorSet ds =
            run_distractor_pass(st, frame, resp, make_geometry(st, box), box);
        if (!ds.empty()) trained = train_filter(st, x, ds, nullptr, 0.0);
    }

    st.model = FilterBank(trained.filter);
    st.last_filter = st.model;
    if (uses_pool(cfg) && !stubs.forbid_keyfilter)
        st.pool.update(st.model, template_features(st, frame, box), 1);
    update_scale_model(frame, box, st.scale);
    return st;
}

Detection tracker_detect(const TrackerState& st, const cv::Mat& frame) {
    Detection det;
    const FeatureTensor z = search_features(st, frame, st.box);
    det.response = correlation_response(forward_dft(z), st.model.spectrum());
    det.geom = make_geometry(st, st.box);
    det.displacement = subpixel_peak(det.response);

    BoundingBox box = st.box;
    box.cx += det.displacement.col * det.geom.px_per_cell_x;
    box.cy += det.displacement.row * det.geom.px_per_cell_y;
    box = clamp_center(box, frame);

    if (st.config.num_scales > 1) {
        double factor = estimate_scale(frame, box, st.scale);
        const double min_side = 8.0;
        const double max_side = 2.0 * std::max(frame.cols, frame.rows);
        factor = std::clamp(factor, min_side / std::max(box.w, box.h),
                            max_side / std::max(box.w, box.h));
        box.w *= factor;
        box.h *= factor;
    }
    det.box = box;
    return det;
}

void tracker_train_and_update(TrackerState& st, const cv::Mat& frame, const Detection& det) {
    st.box = det.box;
    st.frame_index += 1;

    DistractorSet distractors;
    if (st.config.acl)
        distractors = run_distractor_pass(st, frame, det.response, det.geom, st.box);

    FeatureTensor f_cur;
    if (uses_pool(st.config)) f_cur = template_features(st, frame, st.box);

    const FilterBank* keyfilter = choose_keyfilter(st, f_cur);
    const double lambda = st.config.temporal == TemporalMode::none ? 0.0 : st.config.admm.lambda;

    const FeatureTensor x = search_features(st, frame, st.box);
    SolveResult trained = train_filter(st, x, distractors, keyfilter, lambda);

    // W_model <- (1 - alpha) W_model + alpha W
    const double a = st.config.alpha;
    FeatureTensor blended = st.model.spatial;
    for (size_t i = 0; i < blended.data.size(); ++i)
        blended.data[i] = (1.0 - a) * blended.data[i] + a * trained.filter.data[i];
    st.model = FilterBank(std::move(blended));

    st.last_filter = FilterBank(trained.filter);
    if (uses_pool(st.config)) st.pool.update(st.last_filter, std::move(f_cur), st.frame_index);
    update_scale_model(frame, st.box, st.scale);
}

TrackResult track_sequence(const std::vector<cv::Mat>& frames, const BoundingBox& init_box,
                           const TrackerConfig& cfg, ModuleStubs stubs) {
    if (frames.empty()) throw BadBox("track_sequence: no frames");
    using clock = std::chrono::steady_clock;
    TrackResult result;
    result.boxes.reserve(frames.size());
    result.frame_ms.reserve(frames.size());

    auto t0 = clock::now();
    TrackerState st = tracker_init(frames[0], init_box, cfg, stubs);
    result.boxes.push_back(init_box);
    result.frame_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());

    for (size_t t = 1; t < frames.size(); ++t) {
        t0 = clock::now();
        try {
            const Detection det = tracker_detect(st, frames[t]);
            tracker_train_and_update(st, frames[t], det);
        } catch (const TrackError& e) {
            throw TrackError("frame " + std::to_string(t + 1) + ": " + e.what());
        }
        result.boxes.push_back(st.box);
        result.frame_ms.push_back(
            std::chrono::duration<double, std::milli>(clock::now() - t0).count());
    }
    return result;
}

cv::Mat to_float_image(const cv::Mat& frame) {
    if (frame.empty()) throw UnreadableImage("to_float_image: empty frame");
    cv::Mat out;
    if (frame.type() == CV_32FC1 || frame.type() == CV_32FC3) return frame;
    if (frame.type() == CV_8UC1 || frame.type() == CV_8UC3)
        frame.convertTo(out, frame.channels() == 1 ? CV_32FC1 : CV_32FC3, 1.0 / 255.0);
    else if (frame.type() == CV_8UC4) {
        cv::Mat bgr;
        cv::cvtColor(frame, bgr, cv::COLOR_BGRA2BGR);
        bgr.convertTo(out, CV_32FC3, 1.0 / 255.0);
    } else {
        throw UnreadableImage("to_float_image: unsupported frame type");
    }
    return out;
}

}  // namespace l1cft
