#include "l1cft/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace l1cft {

double cle(const BoundingBox& pred, const BoundingBox& gt) {
    return std::hypot(pred.cx - gt.cx, pred.cy - gt.cy);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    const double ix = std::min(a.cx + a.w / 2.0, b.cx + b.w / 2.0) -
                      std::max(a.cx - a.w / 2.0, b.cx - b.w / 2.0);
    const double iy = std::min(a.cy + a.h / 2.0, b.cy + b.h / 2.0) -
                      std::max(a.cy - a.h / 2.0, b.cy - b.h / 2.0);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    const double inter = ix * iy;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return inter / uni;
}

EvalSummary summarize(std::vector<double> cle_series, std::vector<double> iou_series, double fps) {
    if (cle_series.empty() || cle_series.size() != iou_series.size())
        throw EmptySeries("summarize: empty or mismatched series");
    EvalSummary s;
    s.frames = cle_series.size();
    s.fps = fps;
    const double n = static_cast<double>(s.frames);

    s.precision_curve.resize(51, 0.0);
    for (int t = 0; t <= 50; ++t) {
        size_t hits = 0;
        for (double c : cle_series)
            if (c <= static_cast<double>(t)) ++hits;
        s.precision_curve[static_cast<size_t>(t)] = hits / n;
    }
    s.dp_at_20 = s.precision_curve[20];

    s.success_curve.resize(21, 0.0);
    for (int t = 0; t <= 20; ++t) {
        const double thr = t / 20.0;
        size_t hits = 0;
        for (double v : iou_series)
            if (v > thr) ++hits;
        s.success_curve[static_cast<size_t>(t)] = hits / n;
    }
    {
        size_t hits = 0;
        for (double v : iou_series)
            if (v > 0.5) ++hits;
        s.op_at_50 = hits / n;
    }
    double acc = 0.0;
    for (double v : s.success_curve) acc += v;
    s.auc = acc / static_cast<double>(s.success_curve.size());

    s.cle_series = std::move(cle_series);
    s.iou_series = std::move(iou_series);
    return s;
}

EvalSummary summarize_boxes(const std::vector<BoundingBox>& pred,
                            const std::vector<BoundingBox>& gt, double fps) {
    if (pred.empty() || pred.size() != gt.size())
        throw EmptySeries("summarize_boxes: empty or mismatched trajectories");
    std::vector<double> cles, ious;
    cles.reserve(pred.size());
    ious.reserve(pred.size());
    for (size_t i = 0; i < pred.size(); ++i) {
        cles.push_back(cle(pred[i], gt[i]));
        ious.push_back(iou(pred[i], gt[i]));
    }
    return summarize(std::move(cles), std::move(ious), fps);
}

}  // namespace l1cft
