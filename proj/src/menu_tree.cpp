#include "wem/menu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace wem {

MenuTree MenuTree::build(const std::vector<ItemSpec>& top_level, double item_width,
                         double item_height, Point origin) {
    if (!(item_width > 0.0) || !(item_height > 0.0) || !std::isfinite(item_width) ||
        !std::isfinite(item_height)) {
        throw std::invalid_argument("item size must be finite and positive");
    }
    MenuTree tree;
    tree.item_width_ = item_width;
    tree.item_height_ = item_height;
    for (std::size_t k = 0; k < top_level.size(); ++k) {
        const Rect base{origin.x, origin.y + static_cast<double>(k) * item_height, item_width,
                        item_height};
        tree.top_level_.push_back(
            tree.add(top_level[k], std::nullopt, 1, k, std::to_string(k + 1), base));
    }

    std::unordered_set<std::string_view> seen;
    for (const auto& n : tree.nodes_) {
        if (!seen.insert(n.id).second) {
            throw std::invalid_argument("duplicate menu id '" + n.id + "'");
        }
    }
    return tree;
}

NodeIndex MenuTree::add(const ItemSpec& spec, std::optional<NodeIndex> parent, int depth,
                        std::size_t sibling_index, const std::string& path, Rect base) {
    const NodeIndex self = nodes_.size();
    MenuNode node;
    node.id = spec.id.empty() ? path : spec.id;
    node.label = spec.label.empty() ? path : spec.label;
    node.parent = parent;
    node.depth = depth;
    node.sibling_index = sibling_index;
    node.base = base;
    nodes_.push_back(std::move(node));

    const double column_x = base.x + base.width;
    const double column_y = base.y - base.height;
    std::vector<NodeIndex> children;
    children.reserve(spec.children.size());
    for (std::size_t k = 0; k < spec.children.size(); ++k) {
        const Rect child{column_x, column_y + static_cast<double>(k) * base.height, base.width,
                         base.height};
        children.push_back(add(spec.children[k], self, depth + 1, k,
                               path + "." + std::to_string(k + 1), child));
    }
    nodes_[self].children = std::move(children);
    return self;
}

std::optional<NodeIndex> MenuTree::find(std::string_view id) const {
    for (NodeIndex i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<NodeIndex> MenuTree::path_to(NodeIndex node) const {
    std::vector<NodeIndex> path;
    std::optional<NodeIndex> cur = node;
    while (cur) {
        path.push_back(*cur);
        cur = nodes_.at(*cur).parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::span<const NodeIndex> MenuTree::siblings_of(NodeIndex node) const {
    const auto& parent = nodes_.at(node).parent;
    if (!parent) {
        return top_level_;
    }
    return nodes_[*parent].children;
}

MenuConfig MenuConfig::sanitized() const {
    const MenuConfig defaults;
    auto unit = [](double v, double fallback) {
        return std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : fallback;
    };
    MenuConfig c = *this;
    c.alpha = unit(alpha, defaults.alpha);
    c.epsilon = unit(epsilon, defaults.epsilon);
    c.overlap_opacity = unit(overlap_opacity, defaults.overlap_opacity);
    c.hover_delay_ms = std::isfinite(hover_delay_ms) ? std::max(0.0, hover_delay_ms)
                                                     : defaults.hover_delay_ms;
    if (!(flatten_tolerance > 0.0) || !std::isfinite(flatten_tolerance)) {
        c.flatten_tolerance = defaults.flatten_tolerance;
    }
    return c;
}

double compute_eta(double cursor_x, double item_left, double item_width) {
    return std::clamp((cursor_x - item_left) / item_width, 0.0, 1.0);
}

ShapeParams shape_params_for(const MenuNode& node, const MenuConfig& config, double eta) {
    ShapeParams p;
    p.width = node.base.width;
    p.height = node.base.height;
    p.eta = std::clamp(eta, 0.0, 1.0);
    p.alpha = config.alpha;
    p.epsilon = config.epsilon;
    p.leaf = node.is_leaf();
    p.gamma = p.leaf ? 0 : static_cast<int>(node.children.size()) - 1;
    return p;
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::opened:
        return "opened";
    case EventKind::closed:
        return "closed";
    case EventKind::selected:
        return "selected";
    case EventKind::expansion_changed:
        return "expansion_changed";
    }
    return "unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) {
    for (auto k : {EventKind::opened, EventKind::closed, EventKind::selected,
                   EventKind::expansion_changed}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

} // namespace wem
