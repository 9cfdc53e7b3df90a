#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include <opencv2/imgproc.hpp>

#include "l1cft/features.hpp"
#include "oracles.hpp"

using namespace l1cft;

namespace {

cv::Mat random_color_frame(int h, int w, std::mt19937_64& rng) {
    cv::Mat f(h, w, CV_32FC3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int k = 0; k < 3; ++k)
                f.at<cv::Vec3f>(y, x)[k] = static_cast<float>(oracle::urand(rng));
    return f;
}

ImagePatch make_patch(const cv::Mat& pixels) {
    ImagePatch p;
    p.pixels = pixels;
    p.origin_box = BoundingBox{0, 0, static_cast<double>(pixels.cols),
                               static_cast<double>(pixels.rows)};
    return p;
}

}  // namespace

TEST_CASE("crop_patch: aligned crop with matching output is an identity copy") {
    std::mt19937_64 rng(3);
    const cv::Mat frame = random_color_frame(60, 80, rng);
    // corner-format box (21, 11, 16, 12) in 1-based coordinates
    const BoundingBox box = BoundingBox::from_corner(21, 11, 16, 12);
    const ImagePatch p = crop_patch(frame, box, 1.0, 16, 12);
    REQUIRE(p.pixels.rows == 12);
    REQUIRE(p.pixels.cols == 16);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 16; ++x)
            CHECK(p.pixels.at<cv::Vec3f>(y, x) == frame.at<cv::Vec3f>(10 + y, 20 + x));
}

TEST_CASE("crop_patch: out-of-frame pixels replicate the view boundary") {
    std::mt19937_64 rng(5);
    const cv::Mat frame = random_color_frame(20, 20, rng);
    const BoundingBox box{1.0, 1.0, 8.0, 8.0};  // centered at the frame corner
    const ImagePatch p = crop_patch(frame, box, 1.0, 8, 8);
    // replicate-padding oracle: clamped source lookup
    const int left = static_cast<int>(std::lround(box.cx - 3.5));
    const int top = static_cast<int>(std::lround(box.cy - 3.5));
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            const int sx = std::clamp(left + x, 1, 20) - 1;
            const int sy = std::clamp(top + y, 1, 20) - 1;
            CHECK(p.pixels.at<cv::Vec3f>(y, x) == frame.at<cv::Vec3f>(sy, sx));
        }
}

TEST_CASE("crop_patch: 50px box at area scale 4 sources a 200x200 window") {
    std::mt19937_64 rng(7);
    const cv::Mat frame = random_color_frame(400, 400, rng);
    const BoundingBox box{200.0, 200.0, 50.0, 50.0};
    const ImagePatch p = crop_patch(frame, box, 4.0, 200, 200);
    CHECK(p.origin_box.w == 200.0);
    CHECK(p.origin_box.h == 200.0);
    CHECK(p.pixels.rows == 200);
    CHECK(p.pixels.cols == 200);
}

TEST_CASE("crop_patch: degenerate boxes are rejected") {
    std::mt19937_64 rng(9);
    const cv::Mat frame = random_color_frame(20, 20, rng);
    CHECK_THROWS_AS(crop_patch(frame, BoundingBox{5, 5, 0.0, 4.0}, 1.0, 4, 4), EmptyBox);
    CHECK_THROWS_AS(crop_patch(frame, BoundingBox{5, 5, 0.2, 0.2}, 1.0, 4, 4), EmptyBox);
}

TEST_CASE("hog: constant patch yields all-zero channels") {
    cv::Mat flat(16, 16, CV_32FC1, cv::Scalar(0.37f));
    const FeatureTensor f = extract_hog(make_patch(flat), FeatureConfig{});
    REQUIRE(f.channels == 31);
    for (double v : f.data) CHECK(v == 0.0);
}

TEST_CASE("hog: insensitive channels match under 180-degree rotation") {
    // 8x8-cell checker patch with some noise
    std::mt19937_64 rng(11);
    cv::Mat patch(32, 32, CV_32FC1);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            patch.at<float>(y, x) =
                (((x / 4) + (y / 4)) % 2 ? 0.8f : 0.2f) +
                0.05f * static_cast<float>(oracle::srand_(rng));
    cv::Mat rotated;
    cv::rotate(patch, rotated, cv::ROTATE_180);

    const FeatureConfig cfg;
    const FeatureTensor a = extract_hog(make_patch(patch), cfg);
    const FeatureTensor b = extract_hog(make_patch(rotated), cfg);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            for (int o = 18; o < 27; ++o)  // contrast-insensitive block
                CHECK(a.at(i, j, o) ==
                      doctest::Approx(b.at(a.rows - 1 - i, a.cols - 1 - j, o)).epsilon(1e-9));
}

TEST_CASE("hog: vertical step edge concentrates energy in the horizontal-gradient bins") {
    cv::Mat patch(16, 16, CV_32FC1, cv::Scalar(0.1f));
    for (int y = 0; y < 16; ++y)
        for (int x = 8; x < 16; ++x) patch.at<float>(y, x) = 0.9f;
    const FeatureTensor f = extract_hog(make_patch(patch), FeatureConfig{});

    // Reference: per-pixel gradient histogram by a scalar loop. The edge
    // produces pure-dx gradients, i.e. orientation (1, 0): insensitive bin 0.
    double edge_bin = 0.0, other = 0.0;
    for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < f.cols; ++j)
            for (int o = 18; o < 27; ++o)
                (o == 18 ? edge_bin : other) += f.at(i, j, o);
    CHECK(edge_bin > 0.0);
    CHECK(other == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hog: invariant to a global additive intensity shift") {
    std::mt19937_64 rng(13);
    // Values quantized to 1/1024 so that adding the shift is exact in float32
    // and the inputs differ by precisely a constant.
    cv::Mat patch(16, 16, CV_32FC1);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            const int k = 256 + static_cast<int>(oracle::urand(rng) * 512);
            patch.at<float>(y, x) = static_cast<float>(k) / 1024.0f;
        }
    cv::Mat shifted = patch + cv::Scalar(256.0f / 1024.0f);
    const FeatureTensor a = extract_hog(make_patch(patch), FeatureConfig{});
    const FeatureTensor b = extract_hog(make_patch(shifted), FeatureConfig{});
    for (size_t i = 0; i < a.data.size(); ++i)
        CHECK(a.data[i] == doctest::Approx(b.data[i]).epsilon(1e-9));
}

TEST_CASE("color names: saturated red puts its mass on the red channel") {
    cv::Mat red(4, 4, CV_32FC3, cv::Scalar(0.0f, 0.0f, 1.0f));  // BGR
    const FeatureTensor f = extract_color_names(make_patch(red), FeatureConfig{});
    REQUIRE(f.channels == 10);
    const int red_ch = ColorNameTable::red_channel();
    const double red_mass = f.at(0, 0, red_ch);
    CHECK(red_mass > 0.5);
    for (int d = 0; d < 10; ++d)
        if (d != red_ch) CHECK(f.at(0, 0, d) < red_mass);
}

TEST_CASE("color names: cell average of identical pixels equals the single-pixel vector") {
    cv::Mat uniform(4, 4, CV_32FC3, cv::Scalar(0.3f, 0.6f, 0.2f));
    const FeatureConfig cfg;
    const FeatureTensor f = extract_color_names(make_patch(uniform), cfg);
    const float* single = cfg.table().lookup(
        static_cast<int>(std::lround(0.2 * 255)), static_cast<int>(std::lround(0.6 * 255)),
        static_cast<int>(std::lround(0.3 * 255)));
    for (int d = 0; d < 10; ++d)
        CHECK(f.at(0, 0, d) == doctest::Approx(static_cast<double>(single[d])).epsilon(1e-6));
}

TEST_CASE("color names: gray input is rejected") {
    cv::Mat gray(4, 4, CV_32FC1, cv::Scalar(0.5f));
    CHECK_THROWS_AS(extract_color_names(make_patch(gray), FeatureConfig{}), GrayInput);
}

TEST_CASE("color-name table: save/load round trip and missing-table errors") {
    const std::string path = "cn_table_test.bin";
    ColorNameTable::builtin()->save(path);
    const ColorNameTable loaded = ColorNameTable::load(path);
    CHECK(loaded == *ColorNameTable::builtin());
    std::remove(path.c_str());
    CHECK_THROWS_AS(ColorNameTable::load("does_not_exist.bin"), MissingTable);

    // corrupt magic
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fwrite("BADMAGIC", 1, 8, f);
    std::fclose(f);
    CHECK_THROWS_AS(ColorNameTable::load(path), MissingTable);
    std::remove(path.c_str());
}

TEST_CASE("extract_stack: channel counts, windowed boundaries, determinism") {
    std::mt19937_64 rng(17);
    const cv::Mat color = random_color_frame(24, 24, rng);
    cv::Mat gray;
    cv::cvtColor(color, gray, cv::COLOR_BGR2GRAY);

    const FeatureConfig cfg;
    const FeatureTensor fc = extract_stack(make_patch(color), cfg);
    CHECK(fc.channels == 42);
    const FeatureTensor fg = extract_stack(make_patch(gray), cfg);
    CHECK(fg.channels == 32);

    for (int d = 0; d < fc.channels; ++d) {
        for (int j = 0; j < fc.cols; ++j) {
            CHECK(fc.at(0, j, d) == 0.0);
            CHECK(fc.at(fc.rows - 1, j, d) == 0.0);
        }
        for (int i = 0; i < fc.rows; ++i) {
            CHECK(fc.at(i, 0, d) == 0.0);
            CHECK(fc.at(i, fc.cols - 1, d) == 0.0);
        }
    }
    for (double v : fc.data) CHECK(std::isfinite(v));

    const FeatureTensor again = extract_stack(make_patch(color), cfg);
    CHECK(again.data == fc.data);  // bitwise
}

TEST_CASE("extract_stack: geometry errors propagate") {
    cv::Mat odd(18, 18, CV_32FC1, cv::Scalar(0.5f));  // not divisible by cell 4
    CHECK_THROWS_AS(extract_stack(make_patch(odd), FeatureConfig{}), BadGeometry);
}
