#include "l1cft/distractor.hpp"

#include <algorithm>
#include <cmath>

namespace l1cft {

std::vector<LocalMax> local_maxima(const ResponseMap& resp) {
    std::vector<LocalMax> out;
    for (int i = 0; i < resp.rows; ++i) {
        for (int j = 0; j < resp.cols; ++j) {
            const double v = resp.at(i, j);
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = i + di, nj = j + dj;
                    if (ni < 0 || ni >= resp.rows || nj < 0 || nj >= resp.cols) continue;
                    if (resp.at(ni, nj) > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) out.push_back({i, j, v});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const LocalMax& a, const LocalMax& b) { return a.value > b.value; });
    return out;
}

namespace {

void suppress_box(ResponseMap& r, double row, double col, double h, double w) {
    const int r0 = std::max(0, static_cast<int>(std::ceil(row - h / 2.0)));
    const int r1 = std::min(r.rows - 1, static_cast<int>(std::floor(row + h / 2.0)));
    const int c0 = std::max(0, static_cast<int>(std::ceil(col - w / 2.0)));
    const int c1 = std::min(r.cols - 1, static_cast<int>(std::floor(col + w / 2.0)));
    for (int i = r0; i <= r1; ++i)
        for (int j = c0; j <= c1; ++j) r.at(i, j) = 0.0;
}

}  // namespace

std::vector<GridDetection> detect_distractor_points(const ResponseMap& resp,
                                                    const BoundingBox& target_cells,
                                                    double eps, int p_max) {
    std::vector<GridDetection> accepted;
    if (p_max <= 0 || resp.data.empty()) return accepted;
    if (!resp.finite()) return accepted;
    double max_v = resp.data[0];
    for (double v : resp.data) max_v = std::max(max_v, v);
    if (!(max_v > 0.0)) return accepted;

    ResponseMap work(resp.rows, resp.cols);
    for (size_t i = 0; i < resp.data.size(); ++i) work.data[i] = resp.data[i] / max_v;

    while (static_cast<int>(accepted.size()) < p_max) {
        const auto maxima = local_maxima(work);
        if (maxima.empty()) break;
        const LocalMax& top = maxima.front();
        if (top.value <= eps) break;

        const double px = top.col, py = top.row;
        bool rejected = target_cells.contains(px, py);
        for (const GridDetection& d : accepted) {
            if (rejected) break;
            const BoundingBox b{static_cast<double>(d.col), static_cast<double>(d.row),
                                target_cells.w, target_cells.h};
            rejected = b.contains(px, py);
        }
        if (!rejected) {
            GridDetection det;
            det.row = top.row;
            det.col = top.col;
            det.value = top.value;
            det.dist = std::hypot(py - target_cells.cy, px - target_cells.cx);
            det.weight = det.value * std::exp(-det.dist / 16.0);
            accepted.push_back(det);
        }
        suppress_box(work, py, px, target_cells.h, target_cells.w);
    }
    return accepted;
}

cv::Mat mask_target(const cv::Mat& frame, const BoundingBox& b_obj) {
    cv::Mat out = frame.clone();
    if (!b_obj.valid()) return out;
    // 1-based integer pixels whose center lies inside the box.
    const int x0 = std::max(1, static_cast<int>(std::ceil(b_obj.cx - b_obj.w / 2.0)));
    const int x1 = std::min(frame.cols, static_cast<int>(std::floor(b_obj.cx + b_obj.w / 2.0)));
    const int y0 = std::max(1, static_cast<int>(std::ceil(b_obj.cy - b_obj.h / 2.0)));
    const int y1 = std::min(frame.rows, static_cast<int>(std::floor(b_obj.cy + b_obj.h / 2.0)));
    const int ch = frame.channels();
    for (int y = y0; y <= y1; ++y) {
        float* row = out.ptr<float>(y - 1);
        for (int x = x0; x <= x1; ++x)
            for (int k = 0; k < ch; ++k) row[(x - 1) * ch + k] = 0.0f;
    }
    return out;
}

DistractorSet detect_distractors(const ResponseMap& resp_centered, const ResponseGeometry& geom,
                                 const BoundingBox& b_obj, const cv::Mat& frame, double eps,
                                 int p_max, int search_w, int search_h, int out_w, int out_h,
                                 const FeatureConfig& fcfg, bool mask_region) {
    const BoundingBox target_cells{geom.cell_x(b_obj.cx), geom.cell_y(b_obj.cy),
                                   b_obj.w / geom.px_per_cell_x, b_obj.h / geom.px_per_cell_y};
    const auto points = detect_distractor_points(resp_centered, target_cells, eps, p_max);

    DistractorSet set;
    if (points.empty()) return set;

    const cv::Mat ctx_frame = mask_region ? mask_target(frame, b_obj) : frame;
    for (const GridDetection& p : points) {
        Distractor d;
        d.box = BoundingBox{geom.pixel_x(p.col), geom.pixel_y(p.row), b_obj.w, b_obj.h};
        d.weight = p.weight;
        const BoundingBox crop_box{d.box.cx, d.box.cy, static_cast<double>(search_w),
                                   static_cast<double>(search_h)};
        const ImagePatch patch = crop_patch(ctx_frame, crop_box, 1.0, out_w, out_h);
        d.features = extract_stack(patch, fcfg);
        set.items.push_back(std::move(d));
    }
    return set;
}

}  // namespace l1cft
