#pragma once

#include "wem/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wem {

using Millis = double;
using NodeIndex = std::size_t;

struct Rect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    // Left/top edges inclusive, right/bottom exclusive, so stacked items
    // never both claim a shared edge.
    bool contains(Point p) const {
        return p.x >= x && p.x < x + width && p.y >= y && p.y < y + height;
    }
    Point origin() const { return {x, y}; }
    Point center() const { return {x + 0.5 * width, y + 0.5 * height}; }
    double right() const { return x + width; }
    double bottom() const { return y + height; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Declarative item used to build a tree. An empty id defaults to the
/// dot-joined 1-based index path ("2.3.1").
struct ItemSpec {
    std::string id;
    std::string label;
    std::vector<ItemSpec> children;
};

struct MenuNode {
    std::string id;
    std::string label;
    std::optional<NodeIndex> parent; // empty for top-level items
    std::vector<NodeIndex> children;
    int depth = 1;                   // 1 for the top-level column
    std::size_t sibling_index = 0;
    Rect base;

    bool is_leaf() const { return children.empty(); }
};

/// Right-cascading menu hierarchy with its base layout. Nodes are stored in
/// document (pre-)order. The top-level column sits at `origin`; a submenu
/// column starts at its parent's right edge, one item height above the
/// parent, which is the upper reach of a fully expanded wing.
class MenuTree {
public:
    MenuTree() = default;

    static MenuTree build(const std::vector<ItemSpec>& top_level, double item_width,
                          double item_height, Point origin = {0.0, 0.0});

    const std::vector<MenuNode>& nodes() const { return nodes_; }
    const MenuNode& node(NodeIndex i) const { return nodes_.at(i); }
    std::span<const NodeIndex> top_level() const { return top_level_; }
    std::size_t size() const { return nodes_.size(); }
    double item_width() const { return item_width_; }
    double item_height() const { return item_height_; }

    std::optional<NodeIndex> find(std::string_view id) const;
    /// Top-level ancestor first, `node` last.
    std::vector<NodeIndex> path_to(NodeIndex node) const;
    std::span<const NodeIndex> siblings_of(NodeIndex node) const;

private:
    NodeIndex add(const ItemSpec& spec, std::optional<NodeIndex> parent, int depth,
                  std::size_t sibling_index, const std::string& path, Rect base);

    std::vector<MenuNode> nodes_;
    std::vector<NodeIndex> top_level_;
    double item_width_ = 0.0;
    double item_height_ = 0.0;
};

struct MenuConfig {
    double alpha = 1.0;
    double epsilon = 0.0;
    double item_width = 100.0;
    double item_height = 20.0;
    Millis hover_delay_ms = 250.0;
    double overlap_opacity = 0.75;
    FormulaMode formula_mode = FormulaMode::literal;
    double flatten_tolerance = default_flatten_tolerance;

    /// Clamps alpha, epsilon and opacity into [0, 1] and the delay to >= 0.
    /// Non-finite values fall back to the defaults.
    MenuConfig sanitized() const;
};

/// clamp((cursor_x - item_left) / item_width, 0, 1)
double compute_eta(double cursor_x, double item_left, double item_width);

ShapeParams shape_params_for(const MenuNode& node, const MenuConfig& config, double eta);

enum class EventKind { opened, closed, selected, expansion_changed };

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view s);

struct MenuEvent {
    EventKind kind;
    NodeIndex node;
    Millis t_ms;

    friend bool operator==(const MenuEvent&, const MenuEvent&) = default;
};

struct ItemState {
    bool hovered = false;
    std::optional<Millis> hover_since;
    double eta = 0.0;
    bool open = false;
    ItemOutline outline;
    std::uint64_t expanded_seq = 0; // recency stamp of the last expansion
};

struct VisibleOutline {
    NodeIndex node;
    Point origin; // screen position of the outline's p1
    ItemOutline outline;
    double opacity;
    int z;
};

/// Single-owner menu state machine. All mutation goes through
/// update_cursor() and select(); timestamps must be non-decreasing.
///
/// The top-level column is always shown. Expansion follows the cursor on
/// every update, while submenus open only after continuous hover of at
/// least `hover_delay_ms`. An open submenu stays open until another item
/// at its level is committed (hovered past the delay) or a click closes it.
class Menu {
public:
    Menu(MenuTree tree, MenuConfig config);

    std::vector<MenuEvent> update_cursor(Point cursor, Millis now);

    /// Click. Leaf: `selected` then the whole menu closes. Non-leaf: toggles
    /// open immediately. Empty space: closes everything.
    std::vector<MenuEvent> select(Point cursor, Millis now);

    /// Draw order (ascending z).
    std::vector<VisibleOutline> visible_outlines() const;

    /// Top-most item under `p`, testing in reverse draw order.
    std::optional<NodeIndex> hit_test(Point p) const;

    const MenuTree& tree() const { return tree_; }
    const MenuConfig& config() const { return config_; }
    const ItemState& state(NodeIndex i) const { return states_.at(i); }
    std::optional<NodeIndex> hovered() const { return hovered_; }
    /// Open nodes from the top-level column downward.
    std::span<const NodeIndex> open_chain() const { return chain_; }
    bool is_visible(NodeIndex i) const;
    std::optional<Millis> last_time() const { return last_time_; }

private:
    void check_time(Millis now);
    void set_eta(NodeIndex i, double eta, Millis now, std::vector<MenuEvent>& events);
    void leave(NodeIndex i, Millis now, std::vector<MenuEvent>& events);
    void commit(NodeIndex i, Millis now, std::vector<MenuEvent>& events);
    void open(NodeIndex i, Millis now, std::vector<MenuEvent>& events);
    void close_from(std::size_t chain_pos, Millis now, std::vector<MenuEvent>& events);
    void drop_invisible_hover(Millis now, std::vector<MenuEvent>& events);
    std::vector<NodeIndex> visible_nodes() const;
    bool overlaps_sibling(NodeIndex i) const;

    MenuTree tree_;
    MenuConfig config_;
    std::vector<ItemState> states_;
    std::vector<std::vector<Point>> polygons_; // flattened, relative to base origin
    std::vector<NodeIndex> chain_;
    std::optional<NodeIndex> hovered_;
    std::optional<Millis> last_time_;
    std::uint64_t expansion_counter_ = 0;
};

} // namespace wem
