#include "l1cft/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace l1cft {

void Trajectory::position(int t, double& x, double& y) const {
    x = x0;
    y = y0;
    if (type == "linear" || type == "sine") {
        x += vx * t;
        y += vy * t;
    }
    if (type == "sine") {
        const double phase = 2.0 * M_PI * t / std::max(1.0, period);
        x += ax * std::sin(phase);
        y += ay * std::sin(phase);
    }
}

namespace {

double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

uchar clamp8(double v) { return static_cast<uchar>(std::lround(std::clamp(v, 0.0, 255.0))); }

cv::Mat make_texture(const SynthSpec& spec, std::mt19937_64& rng) {
    cv::Mat tex(spec.target_h, spec.target_w, CV_8UC3);
    const int cell = std::max(1, std::min(spec.target_w, spec.target_h) /
                                     std::max(1, spec.checker_cells));
    for (int y = 0; y < spec.target_h; ++y) {
        for (int x = 0; x < spec.target_w; ++x) {
            cv::Vec3d c;
            if (spec.texture == "checker") {
                c = (((x / cell) + (y / cell)) % 2 == 0) ? spec.color_a : spec.color_b;
            } else if (spec.texture == "blob") {
                const double dx = x - (spec.target_w - 1) / 2.0;
                const double dy = y - (spec.target_h - 1) / 2.0;
                const double r = std::hypot(dx, dy) /
                                 (0.5 * std::hypot(spec.target_w - 1.0, spec.target_h - 1.0));
                c = spec.color_a + (spec.color_b - spec.color_a) * std::min(1.0, r);
            } else if (spec.texture == "noise") {
                for (int k = 0; k < 3; ++k) c[k] = 255.0 * next_unit(rng);
            } else {
                throw BadSpec("unknown target texture: " + spec.texture);
            }
            for (int k = 0; k < 3; ++k)
                tex.at<cv::Vec3b>(y, x)[k] =
                    clamp8(c[k] + spec.texture_noise * (2.0 * next_unit(rng) - 1.0));
        }
    }
    return tex;
}

cv::Mat make_background(const SynthSpec& spec, std::mt19937_64& rng) {
    cv::Mat bg(spec.height, spec.width, CV_8UC3);
    if (spec.bg_type == "flat") {
        bg.setTo(cv::Scalar(spec.bg_color[0], spec.bg_color[1], spec.bg_color[2]));
    } else if (spec.bg_type == "noise") {
        for (int y = 0; y < spec.height; ++y)
            for (int x = 0; x < spec.width; ++x)
                for (int k = 0; k < 3; ++k)
                    bg.at<cv::Vec3b>(y, x)[k] = clamp8(
                        spec.bg_color[k] + spec.bg_amplitude * (2.0 * next_unit(rng) - 1.0));
        if (spec.bg_blur > 0.0) cv::GaussianBlur(bg, bg, cv::Size(0, 0), spec.bg_blur);
    } else {
        throw BadSpec("unknown background type: " + spec.bg_type);
    }
    return bg;
}

// Blits `tex` so its box's integer corner lands at (corner_x, corner_y)
// (1-based frame coordinates), clipped to the frame.
void blit(cv::Mat& canvas, const cv::Mat& tex, int corner_x, int corner_y) {
    for (int y = 0; y < tex.rows; ++y) {
        const int fy = corner_y + y - 1;
        if (fy < 0 || fy >= canvas.rows) continue;
        for (int x = 0; x < tex.cols; ++x) {
            const int fx = corner_x + x - 1;
            if (fx < 0 || fx >= canvas.cols) continue;
            canvas.at<cv::Vec3b>(fy, fx) = tex.at<cv::Vec3b>(y, x);
        }
    }
}

BoundingBox box_at(const Trajectory& traj, int t, int w, int h, int* corner_x, int* corner_y) {
    double cx = 0.0, cy = 0.0;
    traj.position(t, cx, cy);
    const int x = static_cast<int>(std::lround(cx - (w - 1) / 2.0));
    const int y = static_cast<int>(std::lround(cy - (h - 1) / 2.0));
    if (corner_x) *corner_x = x;
    if (corner_y) *corner_y = y;
    return BoundingBox::from_corner(x, y, w, h);
}

}  // namespace

RenderedSequence synth_sequence(const SynthSpec& spec) {
    if (spec.frames < 1 || spec.width < 8 || spec.height < 8 || spec.target_w < 2 ||
        spec.target_h < 2)
        throw BadSpec("synth_sequence: degenerate dimensions");

    std::mt19937_64 rng(spec.seed);
    const cv::Mat background = make_background(spec, rng);
    const cv::Mat texture = make_texture(spec, rng);

    const bool occluding = spec.occluder.last >= spec.occluder.first && spec.occluder.last >= 1;
    cv::Mat occ_tex;
    if (occluding) {
        const int ow = spec.target_w + 2 * spec.occluder.margin;
        const int oh = spec.target_h + 2 * spec.occluder.margin;
        occ_tex.create(oh, ow, CV_8UC3);
        for (int y = 0; y < oh; ++y)
            for (int x = 0; x < ow; ++x)
                for (int k = 0; k < 3; ++k)
                    occ_tex.at<cv::Vec3b>(y, x)[k] =
                        clamp8(spec.occluder.color[k] +
                               (spec.occluder.textured ? 60.0 * (2.0 * next_unit(rng) - 1.0)
                                                       : 0.0));
    }

    RenderedSequence seq;
    seq.record.name = spec.name;
    for (int t = 0; t < spec.frames; ++t) {
        cv::Mat frame = background.clone();
        for (const Trajectory& twin : spec.twins) {
            int cx = 0, cy = 0;
            box_at(twin, t, spec.target_w, spec.target_h, &cx, &cy);
            blit(frame, texture, cx, cy);
        }
        int tx = 0, ty = 0;
        const BoundingBox gt = box_at(spec.trajectory, t, spec.target_w, spec.target_h, &tx, &ty);
        blit(frame, texture, tx, ty);

        const int fno = t + 1;
        if (occluding && fno >= spec.occluder.first && fno <= spec.occluder.last) {
            int ox = tx - spec.occluder.margin, oy = ty - spec.occluder.margin;
            if (!spec.occluder.follows_target) {
                box_at(spec.occluder.trajectory, t, occ_tex.cols, occ_tex.rows, &ox, &oy);
            }
            blit(frame, occ_tex, ox, oy);
        }
        if (spec.illumination.last >= spec.illumination.first && fno >= spec.illumination.first &&
            fno <= spec.illumination.last) {
            for (int y = 0; y < frame.rows; ++y)
                for (int x = 0; x < frame.cols; ++x)
                    for (int k = 0; k < 3; ++k)
                        frame.at<cv::Vec3b>(y, x)[k] =
                            clamp8(frame.at<cv::Vec3b>(y, x)[k] * spec.illumination.gain);
        }
        if (spec.gray) {
            cv::Mat g;
            cv::cvtColor(frame, g, cv::COLOR_BGR2GRAY);
            frame = g;
        }
        seq.frames.push_back(frame);
        seq.record.ground_truth.push_back(gt);
    }
    return seq;
}

void write_sequence(RenderedSequence& seq, const std::string& out_dir) {
    const fs::path root(out_dir);
    std::error_code ec;
    fs::create_directories(root / "img", ec);
    if (ec) throw IoError("cannot create sequence directory: " + out_dir);

    seq.record.frame_paths.clear();
    char name[32];
    for (size_t i = 0; i < seq.frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "%04zu.png", i + 1);
        const std::string path = (root / "img" / name).string();
        if (!cv::imwrite(path, seq.frames[i])) throw IoError("cannot write frame: " + path);
        seq.record.frame_paths.push_back(path);
    }
    std::ofstream gt(root / "groundtruth_rect.txt");
    if (!gt) throw IoError("cannot write ground truth in " + out_dir);
    for (const auto& b : seq.record.ground_truth) {
        char line[128];
        std::snprintf(line, sizeof(line), "%.0f,%.0f,%.0f,%.0f\n", b.corner_x(), b.corner_y(),
                      b.w, b.h);
        gt << line;
    }
}

namespace {

Trajectory trajectory_from_json(const json& j) {
    Trajectory t;
    t.type = j.value("type", "constant");
    if (t.type != "constant" && t.type != "linear" && t.type != "sine")
        throw BadSpec("unknown trajectory type: " + t.type);
    if (j.contains("start")) {
        t.x0 = j["start"].at(0).get<double>();
        t.y0 = j["start"].at(1).get<double>();
    }
    if (j.contains("velocity")) {
        t.vx = j["velocity"].at(0).get<double>();
        t.vy = j["velocity"].at(1).get<double>();
    }
    if (j.contains("amplitude")) {
        t.ax = j["amplitude"].at(0).get<double>();
        t.ay = j["amplitude"].at(1).get<double>();
    }
    t.period = j.value("period", 20.0);
    return t;
}

json trajectory_to_json(const Trajectory& t) {
    return json{{"type", t.type},
                {"start", {t.x0, t.y0}},
                {"velocity", {t.vx, t.vy}},
                {"amplitude", {t.ax, t.ay}},
                {"period", t.period}};
}

cv::Vec3d vec3_from_json(const json& j) {
    return cv::Vec3d(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

}  // namespace

SynthSpec SynthSpec::from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw BadSpec("synth spec is not a JSON object");
    try {
        SynthSpec s;
        s.name = j.value("name", s.name);
        s.seed = j.value("seed", s.seed);
        s.frames = j.value("frames", s.frames);
        s.width = j.value("width", s.width);
        s.height = j.value("height", s.height);
        s.gray = j.value("gray", s.gray);
        if (j.contains("background")) {
            const json& b = j["background"];
            s.bg_type = b.value("type", s.bg_type);
            if (b.contains("color")) s.bg_color = vec3_from_json(b["color"]);
            s.bg_amplitude = b.value("amplitude", s.bg_amplitude);
            s.bg_blur = b.value("blur", s.bg_blur);
        }
        if (j.contains("target")) {
            const json& t = j["target"];
            s.texture = t.value("texture", s.texture);
            if (t.contains("size")) {
                s.target_w = t["size"].at(0).get<int>();
                s.target_h = t["size"].at(1).get<int>();
            }
            s.checker_cells = t.value("cells", s.checker_cells);
            s.texture_noise = t.value("noise", s.texture_noise);
            if (t.contains("color_a")) s.color_a = vec3_from_json(t["color_a"]);
            if (t.contains("color_b")) s.color_b = vec3_from_json(t["color_b"]);
            if (t.contains("trajectory")) s.trajectory = trajectory_from_json(t["trajectory"]);
        }
        if (j.contains("twins"))
            for (const json& tw : j["twins"])
                s.twins.push_back(trajectory_from_json(tw.at("trajectory")));
        if (j.contains("occluder")) {
            const json& o = j["occluder"];
            s.occluder.first = o.value("first", s.occluder.first);
            s.occluder.last = o.value("last", s.occluder.last);
            s.occluder.margin = o.value("margin", s.occluder.margin);
            if (o.contains("color")) s.occluder.color = vec3_from_json(o["color"]);
            s.occluder.textured = o.value("textured", s.occluder.textured);
            if (o.contains("trajectory")) {
                s.occluder.trajectory = trajectory_from_json(o["trajectory"]);
                s.occluder.follows_target = false;
            }
        }
        if (j.contains("illumination")) {
            const json& il = j["illumination"];
            s.illumination.first = il.value("first", s.illumination.first);
            s.illumination.last = il.value("last", s.illumination.last);
            s.illumination.gain = il.value("gain", s.illumination.gain);
        }
        return s;
    } catch (const json::exception& e) {
        throw BadSpec(std::string("invalid synth spec: ") + e.what());
    }
}

std::string SynthSpec::to_json_text() const {
    json j;
    j["name"] = name;
    j["seed"] = seed;
    j["frames"] = frames;
    j["width"] = width;
    j["height"] = height;
    j["gray"] = gray;
    j["background"] = {{"type", bg_type},
                       {"color", {bg_color[0], bg_color[1], bg_color[2]}},
                       {"amplitude", bg_amplitude},
                       {"blur", bg_blur}};
    j["target"] = {{"texture", texture},
                   {"size", {target_w, target_h}},
                   {"cells", checker_cells},
                   {"noise", texture_noise},
                   {"color_a", {color_a[0], color_a[1], color_a[2]}},
                   {"color_b", {color_b[0], color_b[1], color_b[2]}},
                   {"trajectory", trajectory_to_json(trajectory)}};
    j["twins"] = json::array();
    for (const auto& t : twins) j["twins"].push_back({{"trajectory", trajectory_to_json(t)}});
    j["occluder"] = {{"first", occluder.first},
                     {"last", occluder.last},
                     {"margin", occluder.margin},
                     {"color", {occluder.color[0], occluder.color[1], occluder.color[2]}},
                     {"textured", occluder.textured}};
    if (!occluder.follows_target) j["occluder"]["trajectory"] = trajectory_to_json(occluder.trajectory);
    j["illumination"] = {{"first", illumination.first},
                         {"last", illumination.last},
                         {"gain", illumination.gain}};
    return j.dump(2);
}

}  // namespace l1cft
