#include "l1cft/features.hpp"

#include <cstdio>
#include <cstring>

namespace l1cft {

namespace {

struct Proto {
    double r, g, b;
};

// sRGB anchors for the 11 English color terms; "grey" (index 3) is folded
// away during generation.
constexpr Proto kProtos[11] = {
    {0, 0, 0},        // black
    {0, 0, 255},      // blue
    {139, 69, 19},    // brown
    {128, 128, 128},  // grey
    {0, 128, 0},      // green
    {255, 165, 0},    // orange
    {255, 192, 203},  // pink
    {128, 0, 128},    // purple
    {255, 0, 0},      // red
    {255, 255, 255},  // white
    {255, 255, 0},    // yellow
};
constexpr int kGrey = 3;
constexpr double kTau = 60.0;

}  // namespace

ColorNameTable ColorNameTable::generate() {
    ColorNameTable t;
    t.probs_.assign(static_cast<size_t>(kBins) * kChannels, 0.0f);
    double p11[11];
    for (int bb = 0; bb < 32; ++bb) {
        for (int gg = 0; gg < 32; ++gg) {
            for (int rr = 0; rr < 32; ++rr) {
                const double r = 8.0 * rr + 3.5;
                const double g = 8.0 * gg + 3.5;
                const double b = 8.0 * bb + 3.5;
                double sum = 0.0;
                for (int k = 0; k < 11; ++k) {
                    const double dr = r - kProtos[k].r;
                    const double dg = g - kProtos[k].g;
                    const double db = b - kProtos[k].b;
                    p11[k] = std::exp(-(dr * dr + dg * dg + db * db) / (2.0 * kTau * kTau));
                    sum += p11[k];
                }
                for (int k = 0; k < 11; ++k) p11[k] /= sum;
                // Fold grey into black/white by luminance.
                const double lum = (r + g + b) / (3.0 * 255.0);
                p11[0] += p11[kGrey] * (1.0 - lum);
                p11[9] += p11[kGrey] * lum;
                const int idx = rr + 32 * gg + 32 * 32 * bb;
                float* out = t.probs_.data() + static_cast<size_t>(idx) * kChannels;
                int c = 0;
                for (int k = 0; k < 11; ++k) {
                    if (k == kGrey) continue;
                    out[c++] = static_cast<float>(p11[k]);
                }
            }
        }
    }
    return t;
}

std::shared_ptr<const ColorNameTable> ColorNameTable::builtin() {
    static const std::shared_ptr<const ColorNameTable> table =
        std::make_shared<const ColorNameTable>(generate());
    return table;
}

ColorNameTable ColorNameTable::load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw MissingTable("color-name table not found: " + path);
    char magic[8];
    if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kMagic, 8) != 0) {
        std::fclose(f);
        throw MissingTable("bad color-name table magic: " + path);
    }
    ColorNameTable t;
    t.probs_.assign(static_cast<size_t>(kBins) * kChannels, 0.0f);
    const size_t n = t.probs_.size();
    const size_t got = std::fread(t.probs_.data(), sizeof(float), n, f);
    std::fclose(f);
    if (got != n) throw MissingTable("truncated color-name table: " + path);
    return t;
}

void ColorNameTable::save(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot write color-name table: " + path);
    bool ok = std::fwrite(kMagic, 1, 8, f) == 8;
    ok = ok && std::fwrite(probs_.data(), sizeof(float), probs_.size(), f) == probs_.size();
    if (std::fclose(f) != 0) ok = false;
    if (!ok) throw IoError("short write to color-name table: " + path);
}

const ColorNameTable& FeatureConfig::table() const {
    if (cn_table) return *cn_table;
    return *ColorNameTable::builtin();
}

}  // namespace l1cft
