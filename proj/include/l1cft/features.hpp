#pragma once

#include <array>
#include <memory>
#include <string>

#include <opencv2/core.hpp>

#include "l1cft/tensor.hpp"
#include "l1cft/types.hpp"

namespace l1cft {

// Patch cropped from a frame: float pixels in [0,1], 1 or 3 channels (BGR).
struct ImagePatch {
    cv::Mat pixels;          // CV_32FC1 or CV_32FC3
    BoundingBox origin_box;  // source region in frame coordinates

    bool color() const { return pixels.channels() == 3; }
};

// RGB -> 10-term color-name probability table over 32x32x32 quantized bins.
// The standard 11-term lookup folded to 10 channels: the "grey" term's mass
// is split between "black" and "white" by luminance. Channel order:
// black, blue, brown, green, orange, pink, purple, red, white, yellow.
class ColorNameTable {
public:
    static constexpr int kBins = 32 * 32 * 32;
    static constexpr int kChannels = 10;
    static constexpr char kMagic[8] = {'C', 'N', 'T', 'B', 'L', '1', '0', '\0'};

    // Deterministic procedural table (the build's default).
    static std::shared_ptr<const ColorNameTable> builtin();

    static ColorNameTable load(const std::string& path);  // throws MissingTable
    void save(const std::string& path) const;             // throws IoError

    // r, g, b in [0,255].
    const float* lookup(int r, int g, int b) const {
        const int idx = (r >> 3) + 32 * (g >> 3) + 32 * 32 * (b >> 3);
        return probs_.data() + static_cast<size_t>(idx) * kChannels;
    }
    static int red_channel() { return 7; }

private:
    std::vector<float> probs_;  // kBins * kChannels
    static ColorNameTable generate();
    friend bool operator==(const ColorNameTable& a, const ColorNameTable& b) {
        return a.probs_ == b.probs_;
    }
};

struct FeatureConfig {
    int cell_size = 4;
    int hog_orientations = 9;
    bool use_color_names = true;
    bool window = true;
    std::shared_ptr<const ColorNameTable> cn_table;  // null -> builtin

    const ColorNameTable& table() const;
};

// Crops a region centered on `box` whose sides are scaled by area_scale,
// replicate-padding pixels outside the frame, bilinearly resized to
// out_w x out_h pixels. An aligned crop with matching output size is an
// identity copy.
ImagePatch crop_patch(const cv::Mat& frame, const BoundingBox& box, double area_scale,
                      int out_w, int out_h);

// Felzenszwalb 31-channel HOG on a cell grid: 18 contrast-sensitive +
// 9 contrast-insensitive orientation channels + 4 texture-energy channels.
FeatureTensor extract_hog(const ImagePatch& patch, const FeatureConfig& cfg);

// Cell-averaged 10-channel color-name probabilities. Requires a color patch.
FeatureTensor extract_color_names(const ImagePatch& patch, const FeatureConfig& cfg);

// Gray (cell-mean luminance - 0.5) + HOG + color names (color input only),
// each channel multiplied by the shared cosine window when cfg.window is set.
// D = 42 for color input, 32 for gray.
FeatureTensor extract_stack(const ImagePatch& patch, const FeatureConfig& cfg);

// Cell-mean luminance channel, zero-centered.
FeatureTensor extract_gray(const ImagePatch& patch, const FeatureConfig& cfg);

}  // namespace l1cft
