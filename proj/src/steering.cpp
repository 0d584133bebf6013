#include "wem/steering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wem {

namespace {

class PathBuilder {
public:
    void add(Point p, double width) {
        if (!path_.samples.empty()) {
            SteeringSample& last = path_.samples.back();
            const double ds = std::hypot(p.x - last.point.x, p.y - last.point.y);
            if (ds == 0.0) {
                // segment junction: a width jump is stored as a second
                // sample at the same arc length
                if (width != last.local_width) {
                    path_.samples.push_back({p, last.arc_length, width});
                }
                return;
            }
            path_.samples.push_back({p, last.arc_length + ds, width});
            return;
        }
        path_.samples.push_back({p, 0.0, width});
    }

    SteeringPath take() { return std::move(path_); }

private:
    SteeringPath path_;
};

std::size_t segment_count(double length, double step) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / step - 1e-9)));
}

} // namespace

void validate(const SteeringPath& path) {
    for (std::size_t i = 0; i < path.samples.size(); ++i) {
        const auto& s = path.samples[i];
        if (!(s.local_width > 0.0) || !std::isfinite(s.local_width)) {
            throw std::invalid_argument("steering path width must be positive at sample " +
                                        std::to_string(i));
        }
        if (i == 0) {
            continue;
        }
        const double prev = path.samples[i - 1].arc_length;
        if (s.arc_length < prev) {
            throw std::invalid_argument("steering path arc length must not decrease");
        }
        if (s.arc_length == prev && (s.point != path.samples[i - 1].point ||
                                     (i > 1 && path.samples[i - 2].arc_length == prev))) {
            throw std::invalid_argument("repeated arc length must be a single width jump");
        }
    }
}

SteeringPath tunnel_for_target(const MenuTree& tree, const MenuConfig& raw_config,
                               NodeIndex target, double eta_profile, double step) {
    if (target >= tree.size()) {
        throw std::invalid_argument("unknown target node");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("tunnel sampling step must be > 0");
    }
    const MenuConfig config = raw_config.sanitized();
    eta_profile = std::clamp(eta_profile, 0.0, 1.0);

    auto outline_at = [&](const MenuNode& node, double eta) {
        return compute_item_outline(shape_params_for(node, config, eta), config.formula_mode);
    };

    const std::vector<NodeIndex> chain = tree.path_to(target);
    PathBuilder builder;
    for (std::size_t level = 0; level < chain.size(); ++level) {
        const MenuNode& node = tree.node(chain[level]);
        const Rect& base = node.base;
        const double cy = base.center().y;
        const bool is_target = level + 1 == chain.size();

        // horizontal traverse; the target is only crossed to its center
        const double run = is_target ? 0.5 * base.width : base.width;
        const std::size_t n = segment_count(run, step);
        for (std::size_t k = 0; k <= n; ++k) {
            const double x = run * static_cast<double>(k) / static_cast<double>(n);
            const ItemOutline o = outline_at(node, eta_profile * x / base.width);
            builder.add({base.x + x, cy}, vertical_extent_at(o, x));
        }
        if (is_target) {
            break;
        }

        // along the right edge to the next item's center height
        const double next_cy = tree.node(chain[level + 1]).base.center().y;
        const double width = vertical_extent_at(outline_at(node, eta_profile), base.width);
        const double drop = next_cy - cy;
        if (drop != 0.0) {
            const std::size_t m = segment_count(std::abs(drop), step);
            for (std::size_t k = 0; k <= m; ++k) {
                const double y = cy + drop * static_cast<double>(k) / static_cast<double>(m);
                builder.add({base.x + base.width, y}, width);
            }
        }
    }
    return builder.take();
}

SteeringPath tunnel_for_target(const MenuTree& tree, const MenuConfig& config,
                               std::string_view target_id, double eta_profile, double step) {
    const auto node = tree.find(target_id);
    if (!node) {
        throw std::invalid_argument("unknown target id '" + std::string(target_id) + "'");
    }
    return tunnel_for_target(tree, config, *node, eta_profile, step);
}

double index_of_difficulty(const SteeringPath& path) {
    double id = 0.0;
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
        const auto& a = path.samples[i - 1];
        const auto& b = path.samples[i];
        id += (b.arc_length - a.arc_length) * 0.5 * (1.0 / a.local_width + 1.0 / b.local_width);
    }
    return id;
}

double predict_time(double id_value, const ModelConstants& k) {
    if (!(k.b > 0.0)) {
        throw std::invalid_argument("steering constant b must be > 0");
    }
    return k.a + k.b * id_value;
}

} // namespace wem
