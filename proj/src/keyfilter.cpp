#include "l1cft/keyfilter.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include <nlohmann/json.hpp>

#include "l1cft/fft.hpp"

namespace l1cft {

void KeyfilterPool::update(FilterBank filter, FeatureTensor template_features, int frame_index) {
    Entry e;
    e.template_spectrum = forward_dft(template_features);
    e.filter = std::move(filter);
    e.template_features = std::move(template_features);
    e.frame_index = frame_index;
    if (static_cast<int>(entries_.size()) < capacity_) {
        entries_.push_back(std::move(e));
    } else if (capacity_ >= 2) {
        // entries_[0] is pinned; entries_[1] is the oldest evictable one.
        entries_.erase(entries_.begin() + 1);
        entries_.push_back(std::move(e));
    }
    // capacity 1: the pool stays at the pinned frame-1 entry.
}

std::vector<double> similarity_vector(const FeatureTensor& f_cur, const KeyfilterPool& pool) {
    if (pool.empty()) throw EmptyPool("similarity_vector: empty keyfilter pool");
    const SpectrumTensor cur = forward_dft(f_cur);
    std::vector<double> v;
    v.reserve(pool.size());
    for (const auto& e : pool.entries()) {
        if (e.template_spectrum.rows != cur.rows || e.template_spectrum.cols != cur.cols ||
            e.template_spectrum.channels != cur.channels)
            throw ShapeMismatch("similarity_vector: template shape differs from f_cur");
        // Channel-summed circular cross-correlation map, then its maximum.
        SpectrumTensor sum(cur.rows, cur.cols, 1);
        for (int d = 0; d < cur.channels; ++d) {
            const std::complex<double>* a = cur.plane(d);
            const std::complex<double>* b = e.template_spectrum.plane(d);
            for (size_t i = 0; i < sum.plane_size(); ++i) sum.data[i] += std::conj(a[i]) * b[i];
        }
        const FeatureTensor corr = inverse_dft_unchecked(sum);
        v.push_back(*std::max_element(corr.data.begin(), corr.data.end()));
    }
    return v;
}

const FilterBank& select_keyfilter(const FeatureTensor& f_cur, const KeyfilterPool& pool) {
    const std::vector<double> v = similarity_vector(f_cur, pool);
    size_t best = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;  // strict: ties keep the older index
    return pool.entries()[best].filter;
}

const FilterBank& select_newest(const KeyfilterPool& pool) {
    if (pool.empty()) throw EmptyPool("select_newest: empty keyfilter pool");
    size_t best = 0;
    for (size_t i = 1; i < pool.size(); ++i)
        if (pool.entries()[i].frame_index > pool.entries()[best].frame_index) best = i;
    return pool.entries()[best].filter;
}

const FilterBank& select_periodic(const KeyfilterPool& pool, int period) {
    if (pool.empty()) throw EmptyPool("select_periodic: empty keyfilter pool");
    if (period < 1) period = 1;
    size_t best = 0;
    int best_frame = -1;
    for (size_t i = 0; i < pool.size(); ++i) {
        const int f = pool.entries()[i].frame_index;
        if ((f - 1) % period == 0 && f > best_frame) {
            best_frame = f;
            best = i;
        }
    }
    // The pinned frame-1 entry always qualifies, so best_frame >= 1 here.
    return pool.entries()[best].filter;
}

namespace {

void write_tensor(std::FILE* f, const FeatureTensor& t, bool& ok) {
    std::vector<float> buf(t.data.begin(), t.data.end());
    const uint64_t bytes = buf.size() * sizeof(float);
    ok = ok && std::fwrite(&bytes, sizeof(bytes), 1, f) == 1;
    ok = ok && std::fwrite(buf.data(), 1, bytes, f) == bytes;
}

FeatureTensor read_tensor(std::FILE* f, int m, int n, int d, int cell) {
    uint64_t bytes = 0;
    if (std::fread(&bytes, sizeof(bytes), 1, f) != 1)
        throw IoError("pool checkpoint: truncated tensor header");
    FeatureTensor t(m, n, d, cell);
    if (bytes != t.size() * sizeof(float))
        throw IoError("pool checkpoint: tensor payload size mismatch");
    std::vector<float> buf(t.size());
    if (std::fread(buf.data(), 1, bytes, f) != bytes)
        throw IoError("pool checkpoint: truncated tensor payload");
    std::copy(buf.begin(), buf.end(), t.data.begin());
    return t;
}

}  // namespace

void KeyfilterPool::save(const std::string& path) const {
    nlohmann::json index;
    index["capacity"] = capacity_;
    index["entries"] = nlohmann::json::array();
    for (const auto& e : entries_) {
        index["entries"].push_back(
            {{"frame_index", e.frame_index},
             {"filter", {e.filter.spatial.rows, e.filter.spatial.cols, e.filter.spatial.channels,
                         e.filter.spatial.cell_size}},
             {"template", {e.template_features.rows, e.template_features.cols,
                           e.template_features.channels, e.template_features.cell_size}}});
    }
    const std::string header = index.dump();

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot write pool checkpoint: " + path);
    bool ok = true;
    const uint64_t hlen = header.size();
    ok = ok && std::fwrite(&hlen, sizeof(hlen), 1, f) == 1;
    ok = ok && std::fwrite(header.data(), 1, header.size(), f) == header.size();
    for (const auto& e : entries_) {
        write_tensor(f, e.filter.spatial, ok);
        write_tensor(f, e.template_features, ok);
    }
    if (std::fclose(f) != 0) ok = false;
    if (!ok) throw IoError("short write to pool checkpoint: " + path);
}

KeyfilterPool KeyfilterPool::load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot read pool checkpoint: " + path);
    try {
        uint64_t hlen = 0;
        if (std::fread(&hlen, sizeof(hlen), 1, f) != 1 || hlen > (1u << 20))
            throw IoError("pool checkpoint: bad header length");
        std::string header(hlen, '\0');
        if (std::fread(header.data(), 1, hlen, f) != hlen)
            throw IoError("pool checkpoint: truncated header");
        nlohmann::json index = nlohmann::json::parse(header, nullptr, false);
        if (index.is_discarded()) throw IoError("pool checkpoint: invalid JSON header");

        KeyfilterPool pool(index.at("capacity").get<int>());
        for (const auto& je : index.at("entries")) {
            const auto fs = je.at("filter");
            const auto ts = je.at("template");
            Entry e;
            e.filter = FilterBank(read_tensor(f, fs[0], fs[1], fs[2], fs[3]));
            e.template_features = read_tensor(f, ts[0], ts[1], ts[2], ts[3]);
            e.template_spectrum = forward_dft(e.template_features);
            e.frame_index = je.at("frame_index").get<int>();
            pool.entries_.push_back(std::move(e));
        }
        std::fclose(f);
        return pool;
    } catch (...) {
        std::fclose(f);
        throw;
    }
}

}  // namespace l1cft
