#pragma once

#include <span>
#include <vector>

namespace wem {

/// Screen-space point in pixels. Origin at the upper left, y grows downward.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

/// How the alpha factors in the upper corner and the handle formulas are read.
///
/// `literal` evaluates the outline formulas exactly as published, including
/// the squared alpha in the upper corner and the extra alpha on the handles.
/// `single_alpha` drops the duplicated factor in both places.
enum class FormulaMode { literal, single_alpha };

/// The variable bundle describing one item in one state.
struct ShapeParams {
    double width = 0.0;   // px, > 0
    double height = 0.0;  // px, > 0
    double eta = 0.0;     // cursor position over the item, 0 = left, 1 = right
    double alpha = 0.0;   // maximum expansion
    double epsilon = 0.0; // 1 = straight lower edge, 0 = maximal curvature
    int gamma = 0;        // child count - 1, 0 for leaves
    bool leaf = false;    // leaves never expand
};

/// Closed item boundary p1 -> p2 -> p3 -(cubic c1, c2)-> p4 -> p1,
/// relative to the item's upper left corner.
struct ItemOutline {
    Point p1, p2, p3, p4;
    Point c1, c2;
    ShapeParams params;

    bool is_rectangle() const;
};

struct FlatOutline {
    std::vector<Point> vertices; // closed: front() == back()
    double tolerance = 0.0;
};

inline constexpr double default_flatten_tolerance = 0.1;

/// Throws std::invalid_argument for non-finite or out-of-range parameters.
void validate(const ShapeParams& params);

ItemOutline compute_item_outline(const ShapeParams& params,
                                 FormulaMode mode = FormulaMode::literal);

/// Cubic Bezier position; t is clamped to [0, 1].
Point bezier_point(double t, Point start, Point h1, Point h2, Point end);

/// Adaptive subdivision of the curved edge until the control polygon lies
/// within `tolerance` of its chord. Straight edges are emitted verbatim.
FlatOutline flatten_outline(const ItemOutline& outline,
                            double tolerance = default_flatten_tolerance);

/// Even-odd point-in-polygon test against a flattened polygon. Points on a
/// shared vertical or horizontal edge belong to exactly one of two abutting
/// polygons (left/top closed, right/bottom open).
bool contains_point(std::span<const Point> polygon, Point q);

bool contains_point(const ItemOutline& outline, Point q,
                    double tolerance = default_flatten_tolerance);

/// Enclosed area in px^2, evaluated on a fine flattening.
double outline_area(const ItemOutline& outline);

/// Shoelace area of a closed polygon, non-negative.
double polygon_area(std::span<const Point> polygon);

/// Lower edge of the outline at relative x in [0, width]. The handle
/// x-coordinates are evenly spaced, so the curve is a graph over x with
/// t = 1 - x / width.
double lower_edge_at(const ItemOutline& outline, double x);

/// Upper edge (segment p1 -> p2) at relative x in [0, width].
double upper_edge_at(const ItemOutline& outline, double x);

/// Vertical extent of the outline at relative x, clamped to [0, width].
double vertical_extent_at(const ItemOutline& outline, double x);

} // namespace wem
