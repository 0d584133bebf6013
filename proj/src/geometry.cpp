#include "wem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wem {

namespace {

constexpr int max_subdivision_depth = 24;
constexpr double area_tolerance = 1e-3;

bool in_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

double distance_to_line(Point p, Point a, Point b) {
    const Point d = b - a;
    const double len = std::hypot(d.x, d.y);
    if (len == 0.0) {
        return std::hypot(p.x - a.x, p.y - a.y);
    }
    return std::abs(d.x * (p.y - a.y) - d.y * (p.x - a.x)) / len;
}

Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

// Appends the interior and end points of the cubic (start excluded).
void flatten_cubic(Point p0, Point p1, Point p2, Point p3, double tolerance, int depth,
                   std::vector<Point>& out) {
    const double flatness =
        std::max(distance_to_line(p1, p0, p3), distance_to_line(p2, p0, p3));
    if (flatness <= tolerance || depth >= max_subdivision_depth) {
        out.push_back(p3);
        return;
    }
    // de Casteljau split at t = 0.5
    const Point p01 = midpoint(p0, p1);
    const Point p12 = midpoint(p1, p2);
    const Point p23 = midpoint(p2, p3);
    const Point p012 = midpoint(p01, p12);
    const Point p123 = midpoint(p12, p23);
    const Point mid = midpoint(p012, p123);
    flatten_cubic(p0, p01, p012, mid, tolerance, depth + 1, out);
    flatten_cubic(mid, p123, p23, p3, tolerance, depth + 1, out);
}

} // namespace

bool ItemOutline::is_rectangle() const {
    return p2.y == 0.0 && p3.y == params.height && c1.y == params.height &&
           c2.y == params.height;
}

void validate(const ShapeParams& params) {
    if (!std::isfinite(params.width) || params.width <= 0.0) {
        throw std::invalid_argument("width must be finite and > 0");
    }
    if (!std::isfinite(params.height) || params.height <= 0.0) {
        throw std::invalid_argument("height must be finite and > 0");
    }
    if (!in_unit(params.eta)) {
        throw std::invalid_argument("eta must lie in [0, 1], got " + std::to_string(params.eta));
    }
    if (!in_unit(params.alpha)) {
        throw std::invalid_argument("alpha must lie in [0, 1], got " +
                                    std::to_string(params.alpha));
    }
    if (!in_unit(params.epsilon)) {
        throw std::invalid_argument("epsilon must lie in [0, 1], got " +
                                    std::to_string(params.epsilon));
    }
    if (params.gamma < 0) {
        throw std::invalid_argument("gamma must be >= 0");
    }
}

ItemOutline compute_item_outline(const ShapeParams& params, FormulaMode mode) {
    validate(params);

    const double w = params.width;
    const double h = params.height;
    const double eta = params.leaf ? 0.0 : params.eta;
    const double alpha = params.alpha;
    const double eps = params.epsilon;
    const double gamma = static_cast<double>(params.gamma);

    ItemOutline o;
    o.params = params;
    o.p1 = {0.0, 0.0};
    o.p4 = {0.0, h};

    const double rise = mode == FormulaMode::literal ? alpha * (h * alpha * eta) : h * alpha * eta;
    // + 0.0 turns -0.0 into 0.0 for the unexpanded case
    o.p2 = {w, -rise + 0.0};

    // A single-child item (gamma = 0) would pull p3 above the bottom edge;
    // the wing is never allowed to invert.
    const double p3y = h + alpha * (gamma * h * eta) - (h * alpha * eta);
    o.p3 = {w, std::max(h, p3y)};

    const double handle_alpha = mode == FormulaMode::literal ? alpha : 1.0;
    const double drop = o.p3.y - h;
    o.c1 = {w * 2.0 / 3.0, h + handle_alpha * (drop * (2.0 / 3.0)) * eps};
    o.c2 = {w * 1.0 / 3.0, h + handle_alpha * (drop * (1.0 / 3.0)) * eps};
    return o;
}

Point bezier_point(double t, Point start, Point h1, Point h2, Point end) {
    t = std::clamp(t, 0.0, 1.0);
    const double u = 1.0 - t;
    const double b0 = u * u * u;
    const double b1 = 3.0 * u * u * t;
    const double b2 = 3.0 * u * t * t;
    const double b3 = t * t * t;
    return {b0 * start.x + b1 * h1.x + b2 * h2.x + b3 * end.x,
            b0 * start.y + b1 * h1.y + b2 * h2.y + b3 * end.y};
}

FlatOutline flatten_outline(const ItemOutline& outline, double tolerance) {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw std::invalid_argument("flatten tolerance must be > 0");
    }
    FlatOutline flat;
    flat.tolerance = tolerance;
    auto& v = flat.vertices;
    v.reserve(16);
    v.push_back(outline.p1);
    v.push_back(outline.p2);
    v.push_back(outline.p3);
    flatten_cubic(outline.p3, outline.c1, outline.c2, outline.p4, tolerance, 0, v);
    v.push_back(outline.p1);
    return flat;
}

bool contains_point(std::span<const Point> polygon, Point q) {
    bool inside = false;
    for (std::size_t i = 1; i < polygon.size(); ++i) {
        const Point a = polygon[i - 1];
        const Point b = polygon[i];
        if ((a.y > q.y) != (b.y > q.y)) {
            const double x_cross = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (q.x < x_cross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

bool contains_point(const ItemOutline& outline, Point q, double tolerance) {
    if (q.x < 0.0 || q.x >= outline.params.width) {
        return false;
    }
    return contains_point(flatten_outline(outline, tolerance).vertices, q);
}

double polygon_area(std::span<const Point> polygon) {
    double twice = 0.0;
    for (std::size_t i = 1; i < polygon.size(); ++i) {
        twice += polygon[i - 1].x * polygon[i].y - polygon[i].x * polygon[i - 1].y;
    }
    return 0.5 * std::abs(twice);
}

double outline_area(const ItemOutline& outline) {
    if (outline.is_rectangle()) {
        return outline.params.width * outline.params.height;
    }
    return polygon_area(flatten_outline(outline, area_tolerance).vertices);
}

double lower_edge_at(const ItemOutline& outline, double x) {
    const double t = 1.0 - std::clamp(x / outline.params.width, 0.0, 1.0);
    return bezier_point(t, outline.p3, outline.c1, outline.c2, outline.p4).y;
}

double upper_edge_at(const ItemOutline& outline, double x) {
    const double f = std::clamp(x / outline.params.width, 0.0, 1.0);
    return outline.p2.y * f;
}

double vertical_extent_at(const ItemOutline& outline, double x) {
    return lower_edge_at(outline, x) - upper_edge_at(outline, x);
}

} // namespace wem
