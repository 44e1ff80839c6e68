#include "detval/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace detval {

namespace {

constexpr double kEps = 1e-9;

// First pixel index whose center (i + 0.5) is >= lo.
int first_center_at_or_after(double lo) {
    return static_cast<int>(std::ceil(lo - 0.5));
}

// Last pixel index whose center (i + 0.5) is <= hi.
int last_center_at_or_before(double hi) {
    return static_cast<int>(std::floor(hi - 0.5));
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double shoelace_area(const std::vector<Point>& v) {
    double s = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    return s / 2.0;
}

// Sutherland-Hodgman clip of a polygon against the half-plane left of a->b.
std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& a, const Point& b) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        const double dc = cross(a, b, cur);
        const double dn = cross(a, b, nxt);
        const bool cur_in = dc >= -kEps;
        const bool nxt_in = dn >= -kEps;
        if (cur_in) out.push_back(cur);
        if (cur_in != nxt_in) {
            const double t = dc / (dc - dn);
            out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
        }
    }
    return out;
}

}  // namespace

void require_valid(const BBox& b) {
    if (!std::isfinite(b.x_min) || !std::isfinite(b.y_min) || !std::isfinite(b.x_max) ||
        !std::isfinite(b.y_max) || b.x_min > b.x_max || b.y_min > b.y_max) {
        throw Error("invalid bbox");
    }
}

// ---------------------------------------------------------------------------
// BinaryMask

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error("mask dimensions must be non-negative");
    rows_.resize(static_cast<std::size_t>(height));
}

BinaryMask BinaryMask::from_pixels(int width, int height,
                                   const std::vector<std::pair<int, int>>& pixels) {
    BinaryMask m(width, height);
    for (const auto& [x, y] : pixels) {
        if (x < 0 || x >= width || y < 0 || y >= height) {
            throw Error("mask pixel outside grid");
        }
        m.rows_[static_cast<std::size_t>(y)].push_back({x, x + 1});
    }
    m.normalize();
    return m;
}

BinaryMask BinaryMask::from_runs(int width, int height,
                                 const std::vector<std::array<int, 3>>& runs) {
    BinaryMask m(width, height);
    for (const auto& r : runs) {
        const int y = r[0], x0 = r[1], x1 = r[2];
        if (y < 0 || y >= height || x0 < 0 || x1 > width || x0 >= x1) {
            throw Error("mask run outside grid or empty");
        }
        m.rows_[static_cast<std::size_t>(y)].push_back({x0, x1});
    }
    m.normalize();
    return m;
}

void BinaryMask::normalize() {
    area_ = 0;
    for (auto& row : rows_) {
        if (row.empty()) continue;
        std::sort(row.begin(), row.end(),
                  [](const Run& a, const Run& b) { return a.begin < b.begin; });
        std::vector<Run> merged;
        merged.reserve(row.size());
        for (const Run& r : row) {
            if (!merged.empty() && r.begin <= merged.back().end) {
                merged.back().end = std::max(merged.back().end, r.end);
            } else {
                merged.push_back(r);
            }
        }
        row = std::move(merged);
        for (const Run& r : row) area_ += r.end - r.begin;
    }
}

bool BinaryMask::contains(int x, int y) const {
    if (x < 0 || x >= width_ || y < 0 || y >= height_) return false;
    const auto& row = rows_[static_cast<std::size_t>(y)];
    for (const Run& r : row) {
        if (x < r.begin) return false;
        if (x < r.end) return true;
    }
    return false;
}

BBox BinaryMask::extent() const {
    if (empty()) throw InvalidReferenceError("empty mask has no extent");
    int min_x = std::numeric_limits<int>::max();
    int max_x = std::numeric_limits<int>::min();
    int min_y = std::numeric_limits<int>::max();
    int max_y = std::numeric_limits<int>::min();
    for (int y = 0; y < height_; ++y) {
        const auto& row = rows_[static_cast<std::size_t>(y)];
        if (row.empty()) continue;
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        min_x = std::min(min_x, row.front().begin);
        max_x = std::max(max_x, row.back().end - 1);
    }
    return {static_cast<double>(min_x), static_cast<double>(min_y),
            static_cast<double>(max_x + 1), static_cast<double>(max_y + 1)};
}

Point BinaryMask::centroid() const {
    if (empty()) throw InvalidReferenceError("empty mask has no centroid");
    double sx = 0.0, sy = 0.0;
    for (int y = 0; y < height_; ++y) {
        for (const Run& r : rows_[static_cast<std::size_t>(y)]) {
            const double n = static_cast<double>(r.end - r.begin);
            // sum of centers begin+0.5 .. end-0.5
            sx += n * (r.begin + r.end) / 2.0;
            sy += n * (y + 0.5);
        }
    }
    const double a = static_cast<double>(area_);
    return {sx / a, sy / a};
}

bool operator==(const BinaryMask& a, const BinaryMask& b) {
    if (a.width_ != b.width_ || a.height_ != b.height_) return false;
    for (int y = 0; y < a.height_; ++y) {
        const auto& ra = a.rows_[static_cast<std::size_t>(y)];
        const auto& rb = b.rows_[static_cast<std::size_t>(y)];
        if (ra.size() != rb.size()) return false;
        for (std::size_t i = 0; i < ra.size(); ++i) {
            if (ra[i].begin != rb[i].begin || ra[i].end != rb[i].end) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// ConvexPolygon

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
    for (const Point& p : vertices) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error("non-finite polygon vertex");
    }
    if (vertices.size() < 3) throw Error("polygon needs at least 3 vertices");
    if (shoelace_area(vertices) < 0.0) {
        std::reverse(vertices.begin(), vertices.end());
    }
    // Eliminate collinear and duplicate vertices.
    std::vector<Point> kept;
    kept.reserve(vertices.size());
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = vertices[(i + n - 1) % n];
        const Point& cur = vertices[i];
        const Point& next = vertices[(i + 1) % n];
        if (cross(prev, cur, next) > kEps) kept.push_back(cur);
    }
    if (kept.size() < 3) throw Error("polygon degenerates after collinear elimination");
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const Point& a = kept[i];
        const Point& b = kept[(i + 1) % kept.size()];
        const Point& c = kept[(i + 2) % kept.size()];
        if (cross(a, b, c) <= kEps) throw Error("polygon boundary is not convex");
    }
    // Canonical start: lexicographically smallest vertex (x, then y).
    auto lex_less = [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    };
    const auto first = std::min_element(kept.begin(), kept.end(), lex_less);
    std::rotate(kept.begin(), first, kept.end());
    area_ = shoelace_area(kept);
    if (area_ <= 0.0) throw Error("polygon area must be positive");
    vertices_ = std::move(kept);
}

ConvexPolygon ConvexPolygon::from_bbox(const BBox& b) {
    require_valid(b);
    if (b.area() <= 0.0) throw Error("degenerate bbox is not a polygon");
    return ConvexPolygon({{b.x_min, b.y_min}, {b.x_max, b.y_min}, {b.x_max, b.y_max}, {b.x_min, b.y_max}});
}

// ---------------------------------------------------------------------------
// Overlap operations

double bbox_iou(const BBox& a, const BBox& b) {
    require_valid(a);
    require_valid(b);
    const double ix = std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
    const double iy = std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) throw UndefinedOverlapError("both boxes have zero area");
    return inter / uni;
}

double mask_iou(const BBox& pred, const BinaryMask& ref) {
    require_valid(pred);
    if (ref.empty()) throw InvalidReferenceError("mask_iou against empty mask");
    const int x0 = first_center_at_or_after(pred.x_min);
    const int x1 = last_center_at_or_before(pred.x_max);
    const int y0 = first_center_at_or_after(pred.y_min);
    const int y1 = last_center_at_or_before(pred.y_max);
    std::int64_t box_pixels = 0;
    std::int64_t inter = 0;
    if (x0 <= x1 && y0 <= y1) {
        box_pixels = static_cast<std::int64_t>(x1 - x0 + 1) * (y1 - y0 + 1);
        const int ry0 = std::max(y0, 0);
        const int ry1 = std::min(y1, ref.height() - 1);
        for (int y = ry0; y <= ry1; ++y) {
            for (const Run& r : ref.row(y)) {
                inter += std::max(0, std::min(r.end - 1, x1) - std::max(r.begin, x0) + 1);
            }
        }
    }
    const std::int64_t uni = box_pixels + ref.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

ConvexPolygon hull_of_mask(const BinaryMask& m) {
    if (m.empty()) throw InvalidReferenceError("hull of empty mask");
    // Candidate corners: per row it is enough to take the outermost run
    // boundaries; interior corners can never be hull vertices.
    std::vector<std::pair<int, int>> pts;
    pts.reserve(static_cast<std::size_t>(m.height()) * 4);
    for (int y = 0; y < m.height(); ++y) {
        const auto& row = m.row(y);
        if (row.empty()) continue;
        const int lo = row.front().begin;
        const int hi = row.back().end;
        pts.push_back({lo, y});
        pts.push_back({lo, y + 1});
        pts.push_back({hi, y});
        pts.push_back({hi, y + 1});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Monotone chain over integer corner coordinates; exact arithmetic.
    auto cross_i = [](const std::pair<int, int>& o, const std::pair<int, int>& a,
                      const std::pair<int, int>& b) -> std::int64_t {
        return static_cast<std::int64_t>(a.first - o.first) * (b.second - o.second) -
               static_cast<std::int64_t>(a.second - o.second) * (b.first - o.first);
    };
    const std::size_t n = pts.size();
    std::vector<std::pair<int, int>> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross_i(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross_i(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    // The constructor re-orients if needed and rotates to the canonical start.
    std::vector<Point> verts;
    verts.reserve(hull.size());
    for (const auto& [x, y] : hull) {
        verts.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
    return ConvexPolygon(std::move(verts));
}

double convex_iou(const ConvexPolygon& a, const ConvexPolygon& b) {
    std::vector<Point> clipped = a.vertices();
    const auto& bv = b.vertices();
    for (std::size_t i = 0; i < bv.size() && !clipped.empty(); ++i) {
        clipped = clip_halfplane(clipped, bv[i], bv[(i + 1) % bv.size()]);
    }
    const double inter = clipped.size() >= 3 ? std::max(0.0, shoelace_area(clipped)) : 0.0;
    const double uni = a.area() + b.area() - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Centers and membership

Point center_of(const BBox& b, CenterMode) {
    require_valid(b);
    return b.center();  // a box's centroid is its midpoint in either mode
}

Point center_of(const BinaryMask& m, CenterMode mode) {
    if (m.empty()) throw InvalidReferenceError("center of empty mask");
    return mode == CenterMode::bbox_center ? m.extent().center() : m.centroid();
}

bool point_in(const Point& p, const BBox& region) {
    return p.x >= region.x_min && p.x <= region.x_max && p.y >= region.y_min &&
           p.y <= region.y_max;
}

bool point_in(const Point& p, const BinaryMask& region) {
    return region.contains(static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y)));
}

bool point_in(const Point& p, const ConvexPolygon& region) {
    const auto& v = region.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (cross(v[i], v[(i + 1) % v.size()], p) < -kEps) return false;
    }
    return true;
}

BinaryMask rasterize_polygon(const ConvexPolygon& poly, int width, int height) {
    if (width < 0 || height < 0) throw Error("grid dimensions must be non-negative");
    double min_y = std::numeric_limits<double>::max();
    double max_y = std::numeric_limits<double>::lowest();
    for (const Point& p : poly.vertices()) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    std::vector<std::array<int, 3>> runs;
    const int y0 = std::max(0, first_center_at_or_after(min_y));
    const int y1 = std::min(height - 1, last_center_at_or_before(max_y));
    const auto& v = poly.vertices();
    for (int y = y0; y <= y1; ++y) {
        const double cy = y + 0.5;
        // Estimated x interval where the scanline crosses the polygon.
        double min_x = std::numeric_limits<double>::max();
        double max_x = std::numeric_limits<double>::lowest();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % v.size()];
            if ((a.y <= cy && b.y >= cy) || (b.y <= cy && a.y >= cy)) {
                double x;
                if (a.y == b.y) {
                    min_x = std::min({min_x, a.x, b.x});
                    max_x = std::max({max_x, a.x, b.x});
                    continue;
                }
                x = a.x + (cy - a.y) * (b.x - a.x) / (b.y - a.y);
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
            }
        }
        if (min_x > max_x) continue;
        int lo = first_center_at_or_after(min_x);
        int hi = last_center_at_or_before(max_x);
        // Snap endpoints to the boundary-inclusive point_in rule so the two
        // membership paths can never disagree.
        while (lo > 0 && point_in({lo - 0.5, cy}, poly)) --lo;
        while (lo <= hi && !point_in({lo + 0.5, cy}, poly)) ++lo;
        while (hi >= lo && !point_in({hi + 0.5, cy}, poly)) --hi;
        while (point_in({hi + 1.5, cy}, poly)) ++hi;
        lo = std::max(lo, 0);
        hi = std::min(hi, width - 1);
        if (lo <= hi) runs.push_back({y, lo, hi + 1});
    }
    return BinaryMask::from_runs(width, height, runs);
}

}  // namespace detval
