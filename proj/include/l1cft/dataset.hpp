#pragma once

#include <set>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "l1cft/types.hpp"

namespace l1cft {

struct SequenceRecord {
    std::string name;
    std::vector<std::string> frame_paths;
    std::vector<BoundingBox> ground_truth;
    std::set<std::string> attributes;
};

// Benchmark-layout directory: an image folder (img/, imgs/ or the directory
// itself) plus a ground-truth rectangle file with one "x,y,w,h" line per
// frame (1-based top-left corner convention).
SequenceRecord load_sequence(const std::string& dir);

// One "x,y,w,h" rectangle per line; accepts commas, tabs or spaces.
std::vector<BoundingBox> load_boxes(const std::string& path);
void save_boxes(const std::string& path, const std::vector<BoundingBox>& boxes);

cv::Mat load_frame(const std::string& path);  // 8-bit image; throws UnreadableImage

}  // namespace l1cft
