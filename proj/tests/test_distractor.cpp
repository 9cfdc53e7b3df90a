#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "l1cft/distractor.hpp"
#include "oracles.hpp"

using namespace l1cft;

namespace {

ResponseMap map_from(const std::vector<double>& v, int m, int n) {
    ResponseMap r(m, n);
    r.data = v;
    return r;
}

ResponseMap random_map(int m, int n, std::mt19937_64& rng) {
    ResponseMap r(m, n);
    for (double& v : r.data) v = oracle::urand(rng);
    return r;
}

cv::Mat random_frame(int h, int w, std::mt19937_64& rng) {
    cv::Mat f(h, w, CV_32FC3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int k = 0; k < 3; ++k)
                f.at<cv::Vec3f>(y, x)[k] = static_cast<float>(oracle::urand(rng));
    return f;
}

}  // namespace

TEST_CASE("mask_target: whole-frame box, outside box, pixel-sum oracle") {
    std::mt19937_64 rng(3);
    const cv::Mat frame = random_frame(12, 16, rng);

    const cv::Mat all = mask_target(frame, BoundingBox{8.5, 6.5, 100.0, 100.0});
    CHECK(cv::sum(all) == cv::Scalar(0, 0, 0));

    const cv::Mat none = mask_target(frame, BoundingBox{100.0, 100.0, 4.0, 4.0});
    CHECK(cv::norm(none - frame) == 0.0);

    const BoundingBox box{6.0, 5.0, 5.0, 3.0};
    const cv::Mat masked = mask_target(frame, box);
    double inside_sum = 0.0;
    for (int y = 1; y <= 12; ++y)
        for (int x = 1; x <= 16; ++x)
            if (box.contains(x, y))
                for (int k = 0; k < 3; ++k) inside_sum += frame.at<cv::Vec3f>(y - 1, x - 1)[k];
    const cv::Scalar fs = cv::sum(frame), ms = cv::sum(masked);
    const double total_frame = fs[0] + fs[1] + fs[2];
    const double total_masked = ms[0] + ms[1] + ms[2];
    CHECK(total_masked == doctest::Approx(total_frame - inside_sum).epsilon(1e-6));
}

TEST_CASE("local_maxima: ramp, constant tie-break, brute-force oracle") {
    ResponseMap ramp(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) ramp.at(i, j) = i + 5 * j;
    const auto rm = local_maxima(ramp);
    CHECK(rm.front().row == 4);
    CHECK(rm.front().col == 4);

    ResponseMap flat(4, 4);
    std::fill(flat.data.begin(), flat.data.end(), 0.7);
    const auto fm = local_maxima(flat);
    CHECK(fm.front().row == 0);
    CHECK(fm.front().col == 0);

    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const ResponseMap r = random_map(8, 8, rng);
        const auto got = local_maxima(r);
        // oracle: exhaustive 8-neighborhood scan
        std::vector<std::tuple<double, int, int>> ref;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                bool lm = true;
                for (int di = -1; di <= 1 && lm; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (!di && !dj) continue;
                        const int ii = i + di, jj = j + dj;
                        if (ii < 0 || ii >= 8 || jj < 0 || jj >= 8) continue;
                        if (r.at(ii, jj) > r.at(i, j)) {
                            lm = false;
                            break;
                        }
                    }
                if (lm) ref.emplace_back(r.at(i, j), i, j);
            }
        REQUIRE(got.size() == ref.size());
        std::stable_sort(ref.begin(), ref.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) > std::get<0>(b);
        });
        for (size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].value == std::get<0>(ref[k]));
            CHECK(got[k].row == std::get<1>(ref[k]));
            CHECK(got[k].col == std::get<2>(ref[k]));
        }
    }
}

TEST_CASE("detect core: single central peak is rejected by the target box") {
    ResponseMap r(21, 21);
    for (int i = 0; i < 21; ++i)
        for (int j = 0; j < 21; ++j)
            r.at(i, j) = std::exp(-((i - 10.0) * (i - 10.0) + (j - 10.0) * (j - 10.0)) / 2.0);
    const BoundingBox target{10.0, 10.0, 6.0, 6.0};
    CHECK(detect_distractor_points(r, target, 0.1, 4).empty());
}

TEST_CASE("detect core: crafted two-peak map reproduces the weight formula") {
    ResponseMap r(40, 40);
    r.at(10, 10) = 2.0;                    // target peak (normalizes to 1.0)
    r.at(10, 26) = 1.0;                    // distractor at distance 16, value 0.5
    const BoundingBox target{10.0, 10.0, 5.0, 5.0};
    const auto det = detect_distractor_points(r, target, 0.1, 4);
    REQUIRE(det.size() == 1);
    CHECK(det[0].row == 10);
    CHECK(det[0].col == 26);
    CHECK(det[0].value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(det[0].dist == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(det[0].weight == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("detect core: at most p_max accepted, and they are the highest peaks") {
    ResponseMap r(60, 60);
    r.at(5, 5) = 1.0;  // target
    const double peaks[6] = {0.9, 0.8, 0.7, 0.6, 0.5, 0.4};
    const int locs[6][2] = {{5, 25}, {5, 45}, {25, 5}, {25, 25}, {25, 45}, {45, 5}};
    for (int k = 0; k < 6; ++k) r.at(locs[k][0], locs[k][1]) = peaks[k];
    const BoundingBox target{5.0, 5.0, 6.0, 6.0};
    const auto det = detect_distractor_points(r, target, 0.1, 4);
    REQUIRE(det.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(det[static_cast<size_t>(k)].value == doctest::Approx(peaks[k]).epsilon(1e-12));
        CHECK(det[static_cast<size_t>(k)].row == locs[k][0]);
        CHECK(det[static_cast<size_t>(k)].col == locs[k][1]);
    }
}

TEST_CASE("detect core: degenerate maps yield the empty set") {
    ResponseMap zeros(8, 8);
    CHECK(detect_distractor_points(zeros, BoundingBox{4, 4, 2, 2}, 0.1, 4).empty());
    ResponseMap bad(8, 8);
    bad.at(3, 3) = std::numeric_limits<double>::quiet_NaN();
    CHECK(detect_distractor_points(bad, BoundingBox{4, 4, 2, 2}, 0.1, 4).empty());
    ResponseMap neg(8, 8);
    std::fill(neg.data.begin(), neg.data.end(), -1.0);
    CHECK(detect_distractor_points(neg, BoundingBox{4, 4, 2, 2}, 0.1, 4).empty());
}

TEST_CASE("detect core: weight monotonicity in distance for equal peaks") {
    ResponseMap r(64, 64);
    r.at(2, 2) = 1.0;     // target
    r.at(2, 20) = 0.5;    // near
    r.at(2, 50) = 0.5;    // far
    const auto det = detect_distractor_points(r, BoundingBox{2, 2, 4, 4}, 0.1, 4);
    REQUIRE(det.size() == 2);
    const double w_near = det[0].col == 20 ? det[0].weight : det[1].weight;
    const double w_far = det[0].col == 50 ? det[0].weight : det[1].weight;
    CHECK(w_far < w_near);
}

TEST_CASE("detect core: matches the brute-force enumeration oracle on random maps") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const int m = 12 + static_cast<int>(oracle::urand(rng) * 30);
        const int n = 12 + static_cast<int>(oracle::urand(rng) * 30);
        ResponseMap r = random_map(m, n, rng);
        // sprinkle a few strong peaks
        for (int k = 0; k < 5; ++k) {
            const int i = static_cast<int>(oracle::urand(rng) * m);
            const int j = static_cast<int>(oracle::urand(rng) * n);
            r.at(i, j) = 1.0 + oracle::urand(rng) * 4.0;
        }
        const BoundingBox target{2.0 + oracle::urand(rng) * (n - 4),
                                 2.0 + oracle::urand(rng) * (m - 4),
                                 3.0 + oracle::urand(rng) * 6.0,
                                 3.0 + oracle::urand(rng) * 6.0};
        const double eps = 0.05 + oracle::urand(rng) * 0.4;
        const int pmax = 1 + static_cast<int>(oracle::urand(rng) * 4);

        const auto got = detect_distractor_points(r, target, eps, pmax);
        const auto ref = oracle::alg1_oracle(r.data, m, n, target.cy, target.cx, target.h,
                                             target.w, eps, pmax);
        REQUIRE(got.size() == ref.size());
        CHECK(got.size() <= static_cast<size_t>(pmax));
        for (size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].row == ref[k].row);
            CHECK(got[k].col == ref[k].col);
            CHECK(got[k].value == doctest::Approx(ref[k].value).epsilon(1e-12));
            CHECK(got[k].weight == doctest::Approx(ref[k].weight).epsilon(1e-12));
            CHECK(got[k].value > eps);
        }
    }
}

TEST_CASE("detect_distractors: context features come from the masked frame") {
    std::mt19937_64 rng(9);
    cv::Mat frame = random_frame(120, 160, rng);
    const BoundingBox b_obj{60.0, 60.0, 16.0, 16.0};

    // image-like response: target blob plus one distractor blob
    ResponseMap resp(50, 50);
    auto blob = [&](int ci, int cj) {
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j)
                resp.at(i, j) += std::exp(-((i - ci) * (i - ci) + (j - cj) * (j - cj)) / 4.0);
    };
    blob(25, 25);
    blob(25, 40);

    ResponseGeometry geom;
    geom.rows = geom.cols = 50;
    geom.px_per_cell_x = geom.px_per_cell_y = 1.0;
    geom.origin_x = b_obj.cx;
    geom.origin_y = b_obj.cy;

    const FeatureConfig fcfg;
    const DistractorSet set = detect_distractors(resp, geom, b_obj, frame, 0.1, 4, 64, 64, 64,
                                                 64, fcfg, true);
    REQUIRE(set.size() == 1);
    const Distractor& d = set.items[0];
    CHECK(d.box.cx == doctest::Approx(75.0));  // 15 cells right of the target
    CHECK(d.box.w == b_obj.w);
    CHECK(d.weight == doctest::Approx(std::exp(-15.0 / 16.0)).epsilon(1e-6));

    // label consistency: extracting from the masked frame zeroes the target
    // pixels, so the same crop from the raw frame must differ
    const cv::Mat masked = mask_target(frame, b_obj);
    const ImagePatch from_masked = crop_patch(masked, BoundingBox{75.0, 60.0, 64.0, 64.0}, 1.0,
                                              64, 64);
    const FeatureTensor expect = extract_stack(from_masked, fcfg);
    CHECK(d.features.data == expect.data);

    const DistractorSet unmasked = detect_distractors(resp, geom, b_obj, frame, 0.1, 4, 64, 64,
                                                      64, 64, fcfg, false);
    CHECK(unmasked.items[0].features.data != expect.data);
}
