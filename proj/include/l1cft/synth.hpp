#pragma once

#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "l1cft/dataset.hpp"
#include "l1cft/types.hpp"

namespace l1cft {

// Center trajectory of a rendered object, in pixels.
struct Trajectory {
    std::string type = "constant";  // constant | linear | sine
    double x0 = 0.0, y0 = 0.0;
    double vx = 0.0, vy = 0.0;
    double ax = 0.0, ay = 0.0;  // sine amplitudes
    double period = 20.0;

    void position(int t, double& x, double& y) const;
};

// Deterministic synthetic-sequence description. Twins share the target's
// texture; the occluder covers the target (or follows its own path) for the
// frame range [first, last].
struct SynthSpec {
    std::string name = "synth";
    uint64_t seed = 1;
    int frames = 30;
    int width = 320;
    int height = 240;
    bool gray = false;

    std::string bg_type = "noise";  // flat | noise
    cv::Vec3d bg_color{90, 100, 110};
    double bg_amplitude = 25.0;
    double bg_blur = 2.0;

    std::string texture = "checker";  // checker | noise | blob
    int target_w = 40;
    int target_h = 40;
    int checker_cells = 5;
    double texture_noise = 10.0;
    cv::Vec3d color_a{200, 60, 40};
    cv::Vec3d color_b{40, 160, 220};
    Trajectory trajectory;

    std::vector<Trajectory> twins;

    struct Occluder {
        int first = 0, last = -1;  // active when last >= first (1-based frames)
        int margin = 6;
        cv::Vec3d color{30, 200, 30};
        Trajectory trajectory;
        bool follows_target = true;
        bool textured = true;
    } occluder;

    struct Illumination {
        int first = 0, last = -1;
        double gain = 1.0;
    } illumination;

    static SynthSpec from_json_text(const std::string& text);  // throws BadSpec
    std::string to_json_text() const;
};

struct RenderedSequence {
    SequenceRecord record;       // frame_paths empty until written to disk
    std::vector<cv::Mat> frames; // CV_8UC3, or CV_8UC1 when spec.gray
};

RenderedSequence synth_sequence(const SynthSpec& spec);  // throws BadSpec

// Writes img/NNNN.png frames plus groundtruth_rect.txt in benchmark layout.
void write_sequence(RenderedSequence& seq, const std::string& out_dir);

}  // namespace l1cft
