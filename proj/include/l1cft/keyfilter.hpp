#pragma once

#include <string>
#include <vector>

#include "l1cft/filter_bank.hpp"
#include "l1cft/tensor.hpp"
#include "l1cft/types.hpp"

namespace l1cft {

// Bounded history of (filter, object-template-features) pairs. The frame-1
// entry is pinned: it is never evicted or overwritten.
class KeyfilterPool {
public:
    struct Entry {
        FilterBank filter;
        FeatureTensor template_features;
        SpectrumTensor template_spectrum;  // cached DFT of template_features
        int frame_index = 0;
    };

    explicit KeyfilterPool(int capacity = 15) : capacity_(capacity) {}

    // Appends when below capacity; otherwise evicts the oldest entry other
    // than the pinned frame-1 one.
    void update(FilterBank filter, FeatureTensor template_features, int frame_index);

    const std::vector<Entry>& entries() const { return entries_; }
    int capacity() const { return capacity_; }
    bool empty() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }

    void save(const std::string& path) const;           // throws IoError
    static KeyfilterPool load(const std::string& path); // throws IoError

private:
    int capacity_;
    std::vector<Entry> entries_;
};

// v[i] = max over spatial shifts of the channel-summed circular
// cross-correlation between f_cur and template i (frequency-domain).
std::vector<double> similarity_vector(const FeatureTensor& f_cur, const KeyfilterPool& pool);

// The filter paired with the most similar template; ties break toward the
// older entry.
const FilterBank& select_keyfilter(const FeatureTensor& f_cur, const KeyfilterPool& pool);

// Ablation alternates sharing the pool: newest entry (the temporal-
// regularizer mode) and newest entry recorded on a keyframe (frame index
// congruent to 1 modulo `period`).
const FilterBank& select_newest(const KeyfilterPool& pool);
const FilterBank& select_periodic(const KeyfilterPool& pool, int period);

}  // namespace l1cft
