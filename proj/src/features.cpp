#include "l1cft/features.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/imgproc.hpp>

namespace l1cft {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

void check_patch(const ImagePatch& patch, const FeatureConfig& cfg) {
    const int h = patch.pixels.rows, w = patch.pixels.cols;
    if (h < cfg.cell_size || w < cfg.cell_size)
        throw BadGeometry("patch smaller than one cell");
    if (h % cfg.cell_size != 0 || w % cfg.cell_size != 0)
        throw BadGeometry("patch dimensions must be divisible by cell_size");
    if (patch.pixels.type() != CV_32FC1 && patch.pixels.type() != CV_32FC3)
        throw BadGeometry("patch must be CV_32FC1 or CV_32FC3");
}

}  // namespace

ImagePatch crop_patch(const cv::Mat& frame, const BoundingBox& box, double area_scale,
                      int out_w, int out_h) {
    if (!box.valid()) throw EmptyBox("crop_patch: box has nonpositive extent");
    if (frame.empty()) throw EmptyBox("crop_patch: empty frame");
    if (frame.type() != CV_32FC1 && frame.type() != CV_32FC3)
        throw BadGeometry("crop_patch: frame must be CV_32FC1 or CV_32FC3");
    const int sw = static_cast<int>(std::lround(box.w * area_scale));
    const int sh = static_cast<int>(std::lround(box.h * area_scale));
    if (sw < 1 || sh < 1 || out_w < 1 || out_h < 1)
        throw EmptyBox("crop_patch: degenerate crop window");

    // Source window in 1-based pixel coordinates, replicate-padded.
    const int left = static_cast<int>(std::lround(box.cx - (sw - 1) / 2.0));
    const int top = static_cast<int>(std::lround(box.cy - (sh - 1) / 2.0));
    const int W = frame.cols, H = frame.rows;

    cv::Mat src(sh, sw, frame.type());
    const int ch = frame.channels();
    for (int r = 0; r < sh; ++r) {
        const int sy = clampi(top + r, 1, H) - 1;
        const float* in = frame.ptr<float>(sy);
        float* out = src.ptr<float>(r);
        for (int c = 0; c < sw; ++c) {
            const int sx = clampi(left + c, 1, W) - 1;
            for (int k = 0; k < ch; ++k) out[c * ch + k] = in[sx * ch + k];
        }
    }

    ImagePatch patch;
    patch.origin_box = BoundingBox{left + (sw - 1) / 2.0, top + (sh - 1) / 2.0,
                                   static_cast<double>(sw), static_cast<double>(sh)};
    if (sw == out_w && sh == out_h)
        patch.pixels = src;
    else
        cv::resize(src, patch.pixels, cv::Size(out_w, out_h), 0.0, 0.0, cv::INTER_LINEAR);
    return patch;
}

FeatureTensor extract_gray(const ImagePatch& patch, const FeatureConfig& cfg) {
    check_patch(patch, cfg);
    const int cell = cfg.cell_size;
    const int m = patch.pixels.rows / cell, n = patch.pixels.cols / cell;
    cv::Mat gray;
    if (patch.color())
        cv::cvtColor(patch.pixels, gray, cv::COLOR_BGR2GRAY);
    else
        gray = patch.pixels;

    FeatureTensor t(m, n, 1, cell);
    const double inv = 1.0 / (cell * cell);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int y = 0; y < cell; ++y) {
                const float* row = gray.ptr<float>(i * cell + y);
                for (int x = 0; x < cell; ++x) s += row[j * cell + x];
            }
            t.at(i, j, 0) = s * inv - 0.5;
        }
    }
    return t;
}

// Felzenszwalb HOG. Gradients use clamped central differences; for color
// input the channel with the largest gradient magnitude wins per pixel.
FeatureTensor extract_hog(const ImagePatch& patch, const FeatureConfig& cfg) {
    check_patch(patch, cfg);
    const int cell = cfg.cell_size;
    const int h = patch.pixels.rows, w = patch.pixels.cols;
    const int cy = h / cell, cx = w / cell;
    const int nOri = cfg.hog_orientations;  // 9 half-orientations
    const int nSens = 2 * nOri;

    std::vector<double> uu(static_cast<size_t>(nOri)), vv(static_cast<size_t>(nOri));
    for (int o = 0; o < nOri; ++o) {
        uu[static_cast<size_t>(o)] = std::cos(M_PI * o / nOri);
        vv[static_cast<size_t>(o)] = std::sin(M_PI * o / nOri);
    }

    // Orientation histograms, cy x cx x nSens.
    std::vector<double> hist(static_cast<size_t>(cy) * cx * nSens, 0.0);
    auto hist_at = [&](int i, int j, int o) -> double& {
        return hist[(static_cast<size_t>(i) * cx + j) * nSens + o];
    };

    const int ch = patch.pixels.channels();
    for (int y = 0; y < h; ++y) {
        const float* rm = patch.pixels.ptr<float>(clampi(y - 1, 0, h - 1));
        const float* rp = patch.pixels.ptr<float>(clampi(y + 1, 0, h - 1));
        const float* rr = patch.pixels.ptr<float>(y);
        for (int x = 0; x < w; ++x) {
            const int xm = clampi(x - 1, 0, w - 1), xp = clampi(x + 1, 0, w - 1);
            double dx = 0.0, dy = 0.0, best = -1.0;
            for (int k = 0; k < ch; ++k) {
                const double gx = rr[xp * ch + k] - rr[xm * ch + k];
                const double gy = rp[x * ch + k] - rm[x * ch + k];
                const double mag = gx * gx + gy * gy;
                if (mag > best) {
                    best = mag;
                    dx = gx;
                    dy = gy;
                }
            }
            const double v = std::sqrt(best);
            // Snap to the closest of the 18 signed orientations.
            double best_dot = 0.0;
            int best_o = 0;
            for (int o = 0; o < nOri; ++o) {
                const double dot = uu[static_cast<size_t>(o)] * dx + vv[static_cast<size_t>(o)] * dy;
                if (dot > best_dot) {
                    best_dot = dot;
                    best_o = o;
                } else if (-dot > best_dot) {
                    best_dot = -dot;
                    best_o = o + nOri;
                }
            }
            // Bilinear spatial binning into the 4 surrounding cells.
            const double xp_c = (x + 0.5) / cell - 0.5;
            const double yp_c = (y + 0.5) / cell - 0.5;
            const int ixp = static_cast<int>(std::floor(xp_c));
            const int iyp = static_cast<int>(std::floor(yp_c));
            const double vx0 = xp_c - ixp, vy0 = yp_c - iyp;
            const double wts[4] = {(1 - vx0) * (1 - vy0), vx0 * (1 - vy0),
                                   (1 - vx0) * vy0, vx0 * vy0};
            const int cjs[4] = {ixp, ixp + 1, ixp, ixp + 1};
            const int cis[4] = {iyp, iyp, iyp + 1, iyp + 1};
            for (int q = 0; q < 4; ++q) {
                if (cis[q] < 0 || cis[q] >= cy || cjs[q] < 0 || cjs[q] >= cx) continue;
                hist_at(cis[q], cjs[q], best_o) += v * wts[q];
            }
        }
    }

    // Per-cell gradient energy over insensitive orientations.
    std::vector<double> energy(static_cast<size_t>(cy) * cx, 0.0);
    for (int i = 0; i < cy; ++i)
        for (int j = 0; j < cx; ++j) {
            double e = 0.0;
            for (int o = 0; o < nOri; ++o) {
                const double s = hist_at(i, j, o) + hist_at(i, j, o + nOri);
                e += s * s;
            }
            energy[static_cast<size_t>(i) * cx + j] = e;
        }
    auto energy_at = [&](int i, int j) {
        return energy[static_cast<size_t>(clampi(i, 0, cy - 1)) * cx + clampi(j, 0, cx - 1)];
    };
    auto block = [&](int i, int j) {
        return energy_at(i, j) + energy_at(i, j + 1) + energy_at(i + 1, j) +
               energy_at(i + 1, j + 1);
    };

    const int nChan = nSens + nOri + 4;  // 31
    FeatureTensor feat(cy, cx, nChan, cell);
    const double trunc = 0.2;
    const double eps = 1e-4;
    for (int i = 0; i < cy; ++i) {
        for (int j = 0; j < cx; ++j) {
            const double nf[4] = {1.0 / std::sqrt(block(i - 1, j - 1) + eps),
                                  1.0 / std::sqrt(block(i - 1, j) + eps),
                                  1.0 / std::sqrt(block(i, j - 1) + eps),
                                  1.0 / std::sqrt(block(i, j) + eps)};
            double tex[4] = {0, 0, 0, 0};
            for (int o = 0; o < nSens; ++o) {
                const double hv = hist_at(i, j, o);
                double acc = 0.0;
                for (int q = 0; q < 4; ++q) {
                    const double t = std::min(hv * nf[q], trunc);
                    acc += t;
                    tex[q] += t;
                }
                feat.at(i, j, o) = 0.5 * acc;
            }
            for (int o = 0; o < nOri; ++o) {
                const double hv = hist_at(i, j, o) + hist_at(i, j, o + nOri);
                double acc = 0.0;
                for (int q = 0; q < 4; ++q) acc += std::min(hv * nf[q], trunc);
                feat.at(i, j, nSens + o) = 0.5 * acc;
            }
            for (int q = 0; q < 4; ++q) feat.at(i, j, nSens + nOri + q) = 0.2357 * tex[q];
        }
    }
    return feat;
}

FeatureTensor extract_color_names(const ImagePatch& patch, const FeatureConfig& cfg) {
    check_patch(patch, cfg);
    if (!patch.color()) throw GrayInput("extract_color_names: patch is not 3-channel");
    const ColorNameTable& table = cfg.table();
    const int cell = cfg.cell_size;
    const int m = patch.pixels.rows / cell, n = patch.pixels.cols / cell;
    const int D = ColorNameTable::kChannels;

    FeatureTensor t(m, n, D, cell);
    const double inv = 1.0 / (cell * cell);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc[ColorNameTable::kChannels] = {};
            for (int y = 0; y < cell; ++y) {
                const float* row = patch.pixels.ptr<float>(i * cell + y);
                for (int x = 0; x < cell; ++x) {
                    const float* px = row + (j * cell + x) * 3;  // BGR
                    const int b = clampi(static_cast<int>(std::lround(px[0] * 255.0f)), 0, 255);
                    const int g = clampi(static_cast<int>(std::lround(px[1] * 255.0f)), 0, 255);
                    const int r = clampi(static_cast<int>(std::lround(px[2] * 255.0f)), 0, 255);
                    const float* p = table.lookup(r, g, b);
                    for (int k = 0; k < D; ++k) acc[k] += p[k];
                }
            }
            for (int k = 0; k < D; ++k) t.at(i, j, k) = acc[k] * inv;
        }
    }
    return t;
}

FeatureTensor extract_stack(const ImagePatch& patch, const FeatureConfig& cfg) {
    const FeatureTensor gray = extract_gray(patch, cfg);
    const FeatureTensor hog = extract_hog(patch, cfg);
    const bool color = patch.color() && cfg.use_color_names;
    FeatureTensor cn;
    if (color) cn = extract_color_names(patch, cfg);

    const int m = gray.rows, n = gray.cols;
    const int D = 1 + hog.channels + (color ? cn.channels : 0);
    FeatureTensor out(m, n, D, cfg.cell_size);
    std::copy(gray.data.begin(), gray.data.end(), out.plane(0));
    std::copy(hog.data.begin(), hog.data.end(), out.plane(1));
    if (color) std::copy(cn.data.begin(), cn.data.end(), out.plane(1 + hog.channels));

    if (cfg.window) {
        const LabelMap win = cosine_window(m, n);
        for (int d = 0; d < D; ++d) {
            double* p = out.plane(d);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) p[static_cast<size_t>(i) * n + j] *= win.at(i, j);
        }
    }
    return out;
}

}  // namespace l1cft
