#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace l1cft {

// Base class for all library errors.
struct TrackError : std::runtime_error {
    explicit TrackError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : TrackError {
    using TrackError::TrackError;
};
struct ImaginaryResidueTooLarge : TrackError {
    using TrackError::TrackError;
};
struct EmptyBox : TrackError {
    using TrackError::TrackError;
};
struct BadGeometry : TrackError {
    using TrackError::TrackError;
};
struct MissingTable : TrackError {
    using TrackError::TrackError;
};
struct GrayInput : TrackError {
    using TrackError::TrackError;
};
struct EmptyPool : TrackError {
    using TrackError::TrackError;
};
struct NonFiniteIterate : TrackError {
    using TrackError::TrackError;
};
struct DegenerateBox : TrackError {
    using TrackError::TrackError;
};
struct BadBox : TrackError {
    using TrackError::TrackError;
};
struct MissingGroundTruth : TrackError {
    using TrackError::TrackError;
};
struct CountMismatch : TrackError {
    using TrackError::TrackError;
};
struct UnreadableImage : TrackError {
    using TrackError::TrackError;
};
struct EmptySeries : TrackError {
    using TrackError::TrackError;
};
struct BadSpec : TrackError {
    using TrackError::TrackError;
};
struct IoError : TrackError {
    using TrackError::TrackError;
};

// Axis-aligned box in pixel coordinates, stored as center + extents.
// Image coordinates follow the benchmark ground-truth convention: the
// top-left pixel of a frame is (1,1), so an integer corner-format box
// (x, y, w, h) has center (x + (w-1)/2, y + (h-1)/2).
struct BoundingBox {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    static BoundingBox from_corner(double x, double y, double w, double h) {
        return {x + (w - 1.0) / 2.0, y + (h - 1.0) / 2.0, w, h};
    }
    double corner_x() const { return cx - (w - 1.0) / 2.0; }
    double corner_y() const { return cy - (h - 1.0) / 2.0; }
    bool valid() const {
        return w > 0.0 && h > 0.0 && std::isfinite(cx) && std::isfinite(cy) &&
               std::isfinite(w) && std::isfinite(h);
    }
    // Center-in-box test, inclusive of the boundary.
    bool contains(double px, double py) const {
        return std::abs(px - cx) <= w / 2.0 && std::abs(py - cy) <= h / 2.0;
    }
};

}  // namespace l1cft
