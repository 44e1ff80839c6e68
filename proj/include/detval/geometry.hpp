#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "detval/errors.hpp"

namespace detval {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned box in continuous pixel coordinates.
struct BBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    Point center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }
};

/// Throws Error if the box is non-finite or inverted.
void require_valid(const BBox& b);

/// Horizontal run of foreground pixels, half-open [begin, end).
struct Run {
    int begin = 0;
    int end = 0;
};

/// Rasterized reference region on a width x height pixel grid.
/// Stored as sorted, merged runs per row. Immutable after construction.
class BinaryMask {
public:
    BinaryMask(int width, int height);

    /// Pixels given as (x, y) coordinates; out-of-grid pixels are rejected.
    static BinaryMask from_pixels(int width, int height,
                                  const std::vector<std::pair<int, int>>& pixels);

    /// Runs given as (y, x_begin, x_end) with half-open x range.
    static BinaryMask from_runs(int width, int height,
                                const std::vector<std::array<int, 3>>& runs);

    int width() const { return width_; }
    int height() const { return height_; }
    std::int64_t area() const { return area_; }
    bool empty() const { return area_ == 0; }

    bool contains(int x, int y) const;
    const std::vector<Run>& row(int y) const { return rows_[static_cast<std::size_t>(y)]; }

    /// Tight box over the drawn pixel extent: spans [min_x, max_x+1] x [min_y, max_y+1].
    /// Throws InvalidReferenceError when empty.
    BBox extent() const;

    /// Mean of foreground pixel centers. Throws InvalidReferenceError when empty.
    Point centroid() const;

    template <typename F>
    void for_each_pixel(F&& f) const {
        for (int y = 0; y < height_; ++y) {
            for (const Run& r : rows_[static_cast<std::size_t>(y)]) {
                for (int x = r.begin; x < r.end; ++x) f(x, y);
            }
        }
    }

    friend bool operator==(const BinaryMask& a, const BinaryMask& b);

private:
    void normalize();

    int width_ = 0;
    int height_ = 0;
    std::int64_t area_ = 0;
    std::vector<std::vector<Run>> rows_;
};

/// Strictly convex polygon, counter-clockwise, collinear vertices eliminated,
/// rotated so the lexicographically smallest vertex comes first.
class ConvexPolygon {
public:
    /// Accepts a convex boundary in either orientation and canonicalizes it.
    /// Throws Error if fewer than 3 vertices remain or the boundary is not convex.
    explicit ConvexPolygon(std::vector<Point> vertices);

    static ConvexPolygon from_bbox(const BBox& b);

    const std::vector<Point>& vertices() const { return vertices_; }
    double area() const { return area_; }

private:
    std::vector<Point> vertices_;
    double area_ = 0.0;
};

enum class CenterMode {
    bbox_center,
    mask_centroid,
};

/// |a n b| / |a u b| over continuous box areas.
/// Throws UndefinedOverlapError when the union has zero area.
double bbox_iou(const BBox& a, const BBox& b);

/// Pixel-space IoU of a box against a mask. The box contributes every pixel
/// whose center lies inside it (boundary inclusive).
double mask_iou(const BBox& pred, const BinaryMask& ref);

/// Convex hull over the four corner points of every foreground pixel, so the
/// hull contains the full drawn extent of the mask.
ConvexPolygon hull_of_mask(const BinaryMask& m);

/// Exact intersection-over-union of two convex polygons via polygon clipping.
double convex_iou(const ConvexPolygon& a, const ConvexPolygon& b);

Point center_of(const BBox& b, CenterMode mode);
Point center_of(const BinaryMask& m, CenterMode mode);

/// Boundary-inclusive membership tests.
bool point_in(const Point& p, const BBox& region);
/// Mask membership: the pixel containing the point (floor of coordinates) is foreground.
bool point_in(const Point& p, const BinaryMask& region);
bool point_in(const Point& p, const ConvexPolygon& region);

/// Pixel is foreground iff its center lies inside the polygon (boundary
/// inclusive). Parts outside the grid are clipped; an empty result is valid.
BinaryMask rasterize_polygon(const ConvexPolygon& poly, int width, int height);

}  // namespace detval
