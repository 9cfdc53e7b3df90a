#include "l1cft/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <opencv2/imgcodecs.hpp>

namespace fs = std::filesystem;

namespace l1cft {

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp";
}

std::vector<std::string> list_images(const fs::path& dir) {
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && is_image_file(e.path())) out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<BoundingBox> load_boxes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingGroundTruth("cannot open rectangle file: " + path);
    std::vector<BoundingBox> boxes;
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',' || c == '\t') c = ' ';
        std::istringstream ss(line);
        double x, y, w, h;
        if (!(ss >> x >> y >> w >> h)) {
            if (line.find_first_not_of(" \r\n") == std::string::npos) continue;  // blank line
            throw MissingGroundTruth("malformed rectangle line: '" + line + "' in " + path);
        }
        boxes.push_back(BoundingBox::from_corner(x, y, w, h));
    }
    return boxes;
}

void save_boxes(const std::string& path, const std::vector<BoundingBox>& boxes) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write rectangle file: " + path);
    char buf[128];
    for (const auto& b : boxes) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f,%.2f,%.2f\n", b.corner_x(), b.corner_y(), b.w,
                      b.h);
        out << buf;
    }
    if (!out) throw IoError("short write: " + path);
}

SequenceRecord load_sequence(const std::string& dir) {
    const fs::path root(dir);
    if (!fs::is_directory(root)) throw MissingGroundTruth("sequence directory not found: " + dir);

    fs::path gt_path;
    for (const char* name : {"groundtruth_rect.txt", "groundtruth.txt", "gt.txt"}) {
        if (fs::exists(root / name)) {
            gt_path = root / name;
            break;
        }
    }
    if (gt_path.empty()) throw MissingGroundTruth("no ground-truth file in " + dir);

    std::vector<std::string> frames;
    for (const char* sub : {"img", "imgs", "frames"}) {
        frames = list_images(root / sub);
        if (!frames.empty()) break;
    }
    if (frames.empty()) frames = list_images(root);
    if (frames.empty()) throw UnreadableImage("no image files in " + dir);

    SequenceRecord rec;
    rec.name = root.filename().string();
    rec.frame_paths = std::move(frames);
    rec.ground_truth = load_boxes(gt_path.string());
    if (rec.ground_truth.size() != rec.frame_paths.size())
        throw CountMismatch("sequence " + rec.name + ": " +
                            std::to_string(rec.frame_paths.size()) + " frames vs " +
                            std::to_string(rec.ground_truth.size()) + " ground-truth lines");
    if (rec.frame_paths.empty()) throw CountMismatch("sequence " + rec.name + " is empty");

    const fs::path attr = root / "attributes.txt";
    if (fs::exists(attr)) {
        std::ifstream in(attr);
        std::string tag;
        while (in >> tag) rec.attributes.insert(tag);
    }
    return rec;
}

cv::Mat load_frame(const std::string& path) {
    cv::Mat img = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (img.empty()) throw UnreadableImage("cannot read image: " + path);
    return img;
}

}  // namespace l1cft
