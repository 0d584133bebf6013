#pragma once

#include "wem/menu.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wem {

/// Menu definition document (JSON):
///
///   {
///     "config": {"alpha": 1, "epsilon": 0, "item_width": 100, "item_height": 20,
///                "hover_delay_tau": 250, "overlap_opacity": 0.75,
///                "formula_mode": "literal"},
///     "origin": [0, 0],
///     "menu": [ {"label": "File", "id": "file", "children": [ ... ]}, "Quit" ]
///   }
///
/// Every key is optional except "menu". A bare string is a leaf label.
/// Out-of-range config values are clamped, not rejected.
struct MenuDefinition {
    MenuConfig config;
    Point origin;
    std::vector<ItemSpec> items;

    MenuTree tree() const;
    Menu menu() const;
};

MenuDefinition parse_menu_definition(std::string_view json_text);
MenuDefinition load_menu_definition(const std::filesystem::path& path);
std::string to_json(const MenuDefinition& def);

std::string_view to_string(FormulaMode mode);
FormulaMode formula_mode_from_string(std::string_view s);

/// One engine event per line: {"t_ms":...,"kind":"...","node_id":"..."}.
/// Field order is fixed.
std::string format_event(const MenuTree& tree, const MenuEvent& event);
std::string format_event_log(const MenuTree& tree, std::span<const MenuEvent> events);
std::vector<MenuEvent> parse_event_log(const MenuTree& tree, std::string_view text);

/// Raw pointer input as recorded by a front end:
/// {"t_ms":...,"type":"move"|"click","x":...,"y":...} per line.
struct InputEvent {
    enum class Type { move, click };
    Type type = Type::move;
    Millis t_ms = 0.0;
    Point position;

    friend bool operator==(const InputEvent&, const InputEvent&) = default;
};

std::vector<InputEvent> parse_input_trace(std::string_view text);
std::string format_input_trace(std::span<const InputEvent> inputs);

/// Feeds every input through the engine in order and collects the events.
std::vector<MenuEvent> replay(Menu& menu, std::span<const InputEvent> inputs);

} // namespace wem
