#include "wem/menu.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace wem {

Menu::Menu(MenuTree tree, MenuConfig config)
    : tree_(std::move(tree)), config_(config.sanitized()) {
    states_.resize(tree_.size());
    polygons_.resize(tree_.size());
    for (NodeIndex i = 0; i < tree_.size(); ++i) {
        states_[i].outline =
            compute_item_outline(shape_params_for(tree_.node(i), config_, 0.0), config_.formula_mode);
        polygons_[i] = flatten_outline(states_[i].outline, config_.flatten_tolerance).vertices;
    }
}

void Menu::check_time(Millis now) {
    if (last_time_ && now < *last_time_) {
        throw std::invalid_argument("menu event timestamps must be non-decreasing");
    }
    last_time_ = now;
}

bool Menu::is_visible(NodeIndex i) const {
    const auto& parent = tree_.node(i).parent;
    if (!parent) {
        return true;
    }
    return states_[*parent].open;
}

std::vector<NodeIndex> Menu::visible_nodes() const {
    std::vector<NodeIndex> out(tree_.top_level().begin(), tree_.top_level().end());
    for (NodeIndex open_node : chain_) {
        const auto& children = tree_.node(open_node).children;
        out.insert(out.end(), children.begin(), children.end());
    }
    return out;
}

bool Menu::overlaps_sibling(NodeIndex i) const {
    const ItemState& st = states_[i];
    if (st.outline.is_rectangle()) {
        return false;
    }
    const MenuNode& node = tree_.node(i);
    const std::size_t n_siblings = tree_.siblings_of(i).size();
    // The upper edge is a segment that rises above y = 0 iff p2.y < 0; the
    // lower curve stays inside the hull of its control points, so it drops
    // below y = height iff p3.y > height.
    const bool above = st.outline.p2.y < 0.0 && node.sibling_index > 0;
    const bool below = st.outline.p3.y > node.base.height && node.sibling_index + 1 < n_siblings;
    return above || below;
}

std::vector<VisibleOutline> Menu::visible_outlines() const {
    std::vector<NodeIndex> nodes = visible_nodes();
    auto key = [this](NodeIndex i) {
        const ItemState& st = states_[i];
        const bool expanded = !st.outline.is_rectangle();
        return std::make_tuple(tree_.node(i).depth, expanded, st.open,
                               expanded ? st.expanded_seq : std::uint64_t{0}, i);
    };
    std::sort(nodes.begin(), nodes.end(),
              [&](NodeIndex a, NodeIndex b) { return key(a) < key(b); });

    std::vector<VisibleOutline> out;
    out.reserve(nodes.size());
    int z = 0;
    for (NodeIndex i : nodes) {
        const double opacity = overlaps_sibling(i) ? config_.overlap_opacity : 1.0;
        out.push_back({i, tree_.node(i).base.origin(), states_[i].outline, opacity, z++});
    }
    return out;
}

std::optional<NodeIndex> Menu::hit_test(Point p) const {
    const auto drawn = visible_outlines();
    for (auto it = drawn.rbegin(); it != drawn.rend(); ++it) {
        const NodeIndex i = it->node;
        const Rect& base = tree_.node(i).base;
        if (states_[i].outline.is_rectangle()) {
            if (base.contains(p)) {
                return i;
            }
            continue;
        }
        const Point rel = p - base.origin();
        if (rel.x < 0.0 || rel.x >= base.width) {
            continue;
        }
        if (contains_point(polygons_[i], rel)) {
            return i;
        }
    }
    return std::nullopt;
}

void Menu::set_eta(NodeIndex i, double eta, Millis now, std::vector<MenuEvent>& events) {
    ItemState& st = states_[i];
    if (st.eta == eta && st.outline.params.eta == eta) {
        return;
    }
    const bool was_expanded = !st.outline.is_rectangle();
    st.eta = eta;
    st.outline = compute_item_outline(shape_params_for(tree_.node(i), config_, eta),
                                      config_.formula_mode);
    polygons_[i] = flatten_outline(st.outline, config_.flatten_tolerance).vertices;
    const bool expanded = !st.outline.is_rectangle();
    if (expanded && !was_expanded) {
        st.expanded_seq = ++expansion_counter_;
    }
    if (expanded != was_expanded) {
        events.push_back({EventKind::expansion_changed, i, now});
    }
}

void Menu::leave(NodeIndex i, Millis now, std::vector<MenuEvent>& events) {
    ItemState& st = states_[i];
    st.hovered = false;
    st.hover_since.reset();
    set_eta(i, 0.0, now, events);
    if (hovered_ == i) {
        hovered_.reset();
    }
}

void Menu::open(NodeIndex i, Millis now, std::vector<MenuEvent>& events) {
    states_[i].open = true;
    chain_.push_back(i);
    events.push_back({EventKind::opened, i, now});
}

void Menu::close_from(std::size_t chain_pos, Millis now, std::vector<MenuEvent>& events) {
    while (chain_.size() > chain_pos) {
        const NodeIndex i = chain_.back();
        chain_.pop_back();
        states_[i].open = false;
        events.push_back({EventKind::closed, i, now});
    }
    drop_invisible_hover(now, events);
}

void Menu::drop_invisible_hover(Millis now, std::vector<MenuEvent>& events) {
    if (hovered_ && !is_visible(*hovered_)) {
        leave(*hovered_, now, events);
    }
}

void Menu::commit(NodeIndex i, Millis now, std::vector<MenuEvent>& events) {
    // The item's column is visible, so chain_[0 .. depth-2] are its ancestors
    // and chain_[depth-1] (if present) is the open item at its level.
    const std::size_t level = static_cast<std::size_t>(tree_.node(i).depth) - 1;
    if (chain_.size() > level && chain_[level] != i) {
        close_from(level, now, events);
    }
    const ItemState& st = states_[i];
    if (!st.open && !tree_.node(i).is_leaf() && st.eta > 0.0) {
        open(i, now, events);
    }
}

std::vector<MenuEvent> Menu::update_cursor(Point cursor, Millis now) {
    check_time(now);
    std::vector<MenuEvent> events;

    const std::optional<NodeIndex> target = hit_test(cursor);
    if (target != hovered_) {
        if (hovered_) {
            leave(*hovered_, now, events);
        }
        if (target) {
            hovered_ = target;
            states_[*target].hovered = true;
            states_[*target].hover_since = now;
        }
    }
    if (!hovered_) {
        return events;
    }

    const NodeIndex h = *hovered_;
    const Rect& base = tree_.node(h).base;
    set_eta(h, compute_eta(cursor.x, base.x, base.width), now, events);
    if (now - *states_[h].hover_since >= config_.hover_delay_ms) {
        commit(h, now, events);
    }
    return events;
}

std::vector<MenuEvent> Menu::select(Point cursor, Millis now) {
    check_time(now);
    std::vector<MenuEvent> events;
    // a click restarts the hover clock, so an item closed by clicking
    // stays closed until it is hovered for another full delay
    if (hovered_) {
        states_[*hovered_].hover_since = now;
    }

    const std::optional<NodeIndex> target = hit_test(cursor);
    if (!target) {
        close_from(0, now, events);
        return events;
    }
    const NodeIndex t = *target;
    if (tree_.node(t).is_leaf()) {
        events.push_back({EventKind::selected, t, now});
        close_from(0, now, events);
        return events;
    }
    if (states_[t].open) {
        const auto pos = std::find(chain_.begin(), chain_.end(), t) - chain_.begin();
        close_from(static_cast<std::size_t>(pos), now, events);
        return events;
    }
    const std::size_t level = static_cast<std::size_t>(tree_.node(t).depth) - 1;
    close_from(level, now, events);
    open(t, now, events);
    return events;
}

} // namespace wem
