#pragma once

#include <memory>

#include "l1cft/fft.hpp"
#include "l1cft/tensor.hpp"

namespace l1cft {

// Multi-channel correlation filter with a lazily cached spectrum.
struct FilterBank {
    FeatureTensor spatial;

    FilterBank() = default;
    explicit FilterBank(FeatureTensor s) : spatial(std::move(s)) {}

    const SpectrumTensor& spectrum() const {
        if (!cache_) cache_ = std::make_shared<SpectrumTensor>(forward_dft(spatial));
        return *cache_;
    }
    void invalidate() { cache_.reset(); }
    bool empty() const { return spatial.data.empty(); }

private:
    mutable std::shared_ptr<SpectrumTensor> cache_;
};

}  // namespace l1cft
