#pragma once

#include "wem/geometry.hpp"
#include "wem/menu.hpp"

#include <string_view>
#include <vector>

namespace wem {

struct SteeringSample {
    Point point;
    double arc_length = 0.0;  // px from the start of the path
    double local_width = 0.0; // px, tunnel width at this sample
};

/// Sampled centerline with local tunnel width. Every width is positive and
/// arc length never decreases; two consecutive samples may share an arc
/// length (and position) to mark a jump in width.
struct SteeringPath {
    std::vector<SteeringSample> samples;

    double length() const { return samples.empty() ? 0.0 : samples.back().arc_length; }
};

/// Movement time model T = a + b * ID.
struct ModelConstants {
    double a = 0.0; // s
    double b = 1.0; // s per unit of difficulty, > 0
};

/// Throws std::invalid_argument if the path breaks its invariants.
void validate(const SteeringPath& path);

/// Tunnel a user steers from the left edge of the top-level ancestor to the
/// center of `target`.
///
/// Each ancestor is crossed horizontally through its vertical center; the
/// width at relative x is the outline's vertical extent there, with the
/// item expanded to eta = eta_profile * (x / width). The path then runs
/// along the ancestor's right edge to the next item's center height, with
/// the width of the right edge at eta = eta_profile. Where two segments meet
/// with different widths the path holds both, so the integral stays exact
/// at the jump. `step` is the sampling interval in px.
SteeringPath tunnel_for_target(const MenuTree& tree, const MenuConfig& config, NodeIndex target,
                               double eta_profile = 1.0, double step = 1.0);

/// Same, by id. Throws std::invalid_argument for an unknown id.
SteeringPath tunnel_for_target(const MenuTree& tree, const MenuConfig& config,
                               std::string_view target_id, double eta_profile = 1.0,
                               double step = 1.0);

/// Trapezoidal integral of ds / W(s).
double index_of_difficulty(const SteeringPath& path);

double predict_time(double id_value, const ModelConstants& k);

} // namespace wem
