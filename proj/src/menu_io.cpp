#include "wem/menu_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wem {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ItemSpec parse_item(const json& j) {
    ItemSpec item;
    if (j.is_string()) {
        item.label = j.get<std::string>();
        return item;
    }
    if (!j.is_object()) {
        throw std::invalid_argument("menu item must be a string or an object");
    }
    item.label = j.value("label", std::string{});
    item.id = j.value("id", std::string{});
    if (auto it = j.find("children"); it != j.end()) {
        if (!it->is_array()) {
            throw std::invalid_argument("'children' must be an array");
        }
        for (const auto& c : *it) {
            item.children.push_back(parse_item(c));
        }
    }
    return item;
}

ordered_json item_to_json(const ItemSpec& item) {
    ordered_json j;
    if (!item.id.empty()) {
        j["id"] = item.id;
    }
    j["label"] = item.label;
    if (!item.children.empty()) {
        ordered_json children = ordered_json::array();
        for (const auto& c : item.children) {
            children.push_back(item_to_json(c));
        }
        j["children"] = std::move(children);
    }
    return j;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                f(line, line_no);
            } catch (const json::exception& e) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        start = end + 1;
    }
}

} // namespace

std::string_view to_string(FormulaMode mode) {
    return mode == FormulaMode::literal ? "literal" : "single_alpha";
}

FormulaMode formula_mode_from_string(std::string_view s) {
    if (s == "literal") {
        return FormulaMode::literal;
    }
    if (s == "single_alpha") {
        return FormulaMode::single_alpha;
    }
    throw std::invalid_argument("unknown formula_mode '" + std::string(s) + "'");
}

MenuTree MenuDefinition::tree() const {
    return MenuTree::build(items, config.item_width, config.item_height, origin);
}

Menu MenuDefinition::menu() const { return Menu(tree(), config); }

MenuDefinition parse_menu_definition(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("menu definition: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("menu") || !doc["menu"].is_array()) {
        throw std::invalid_argument("menu definition needs a 'menu' array");
    }

    MenuDefinition def;
    if (auto it = doc.find("config"); it != doc.end()) {
        const json& c = *it;
        MenuConfig& cfg = def.config;
        cfg.alpha = c.value("alpha", cfg.alpha);
        cfg.epsilon = c.value("epsilon", cfg.epsilon);
        cfg.item_width = c.value("item_width", cfg.item_width);
        cfg.item_height = c.value("item_height", cfg.item_height);
        cfg.hover_delay_ms = c.value("hover_delay_tau", cfg.hover_delay_ms);
        cfg.overlap_opacity = c.value("overlap_opacity", cfg.overlap_opacity);
        if (c.contains("formula_mode")) {
            cfg.formula_mode = formula_mode_from_string(c["formula_mode"].get<std::string>());
        }
        cfg = cfg.sanitized();
    }
    if (auto it = doc.find("origin"); it != doc.end()) {
        def.origin = {it->at(0).get<double>(), it->at(1).get<double>()};
    }
    for (const auto& item : doc["menu"]) {
        def.items.push_back(parse_item(item));
    }
    return def;
}

MenuDefinition load_menu_definition(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open menu definition " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_menu_definition(ss.str());
}

std::string to_json(const MenuDefinition& def) {
    ordered_json doc;
    const MenuConfig& c = def.config;
    doc["config"] = {{"alpha", c.alpha},
                     {"epsilon", c.epsilon},
                     {"item_width", c.item_width},
                     {"item_height", c.item_height},
                     {"hover_delay_tau", c.hover_delay_ms},
                     {"overlap_opacity", c.overlap_opacity},
                     {"formula_mode", std::string(to_string(c.formula_mode))}};
    doc["origin"] = {def.origin.x, def.origin.y};
    ordered_json items = ordered_json::array();
    for (const auto& item : def.items) {
        items.push_back(item_to_json(item));
    }
    doc["menu"] = std::move(items);
    return doc.dump(2) + "\n";
}

std::string format_event(const MenuTree& tree, const MenuEvent& event) {
    ordered_json j;
    j["t_ms"] = event.t_ms;
    j["kind"] = std::string(to_string(event.kind));
    j["node_id"] = tree.node(event.node).id;
    return j.dump();
}

std::string format_event_log(const MenuTree& tree, std::span<const MenuEvent> events) {
    std::string out;
    for (const auto& e : events) {
        out += format_event(tree, e);
        out += '\n';
    }
    return out;
}

std::vector<MenuEvent> parse_event_log(const MenuTree& tree, std::string_view text) {
    std::vector<MenuEvent> events;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const json j = json::parse(line);
        const auto kind = event_kind_from_string(j.at("kind").get<std::string>());
        const auto node = tree.find(j.at("node_id").get<std::string>());
        if (!kind || !node) {
            throw std::invalid_argument("event log line " + std::to_string(line_no) +
                                        ": unknown kind or node");
        }
        events.push_back({*kind, *node, j.at("t_ms").get<double>()});
    });
    return events;
}

std::vector<InputEvent> parse_input_trace(std::string_view text) {
    std::vector<InputEvent> inputs;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const json j = json::parse(line);
        InputEvent e;
        const std::string type = j.at("type").get<std::string>();
        if (type == "move") {
            e.type = InputEvent::Type::move;
        } else if (type == "click") {
            e.type = InputEvent::Type::click;
        } else {
            throw std::invalid_argument("input trace line " + std::to_string(line_no) +
                                        ": unknown type '" + type + "'");
        }
        e.t_ms = j.at("t_ms").get<double>();
        e.position = {j.at("x").get<double>(), j.at("y").get<double>()};
        inputs.push_back(e);
    });
    return inputs;
}

std::string format_input_trace(std::span<const InputEvent> inputs) {
    std::string out;
    for (const auto& e : inputs) {
        ordered_json j;
        j["t_ms"] = e.t_ms;
        j["type"] = e.type == InputEvent::Type::move ? "move" : "click";
        j["x"] = e.position.x;
        j["y"] = e.position.y;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<MenuEvent> replay(Menu& menu, std::span<const InputEvent> inputs) {
    std::vector<MenuEvent> all;
    for (const auto& in : inputs) {
        auto events = in.type == InputEvent::Type::move ? menu.update_cursor(in.position, in.t_ms)
                                                        : menu.select(in.position, in.t_ms);
        all.insert(all.end(), events.begin(), events.end());
    }
    return all;
}

} // namespace wem
