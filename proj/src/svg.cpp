#include "wem/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

namespace wem {

namespace {

std::string num(double v) {
    std::string s = fmt::format("{:.3f}", v);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s == "-0" ? "0" : s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string path_data(const VisibleOutline& v) {
    auto pt = [&](Point p) { return num(v.origin.x + p.x) + "," + num(v.origin.y + p.y); };
    const ItemOutline& o = v.outline;
    if (o.is_rectangle()) {
        return fmt::format("M{} L{} L{} L{} Z", pt(o.p1), pt(o.p2), pt(o.p3), pt(o.p4));
    }
    return fmt::format("M{} L{} L{} C{} {} {} Z", pt(o.p1), pt(o.p2), pt(o.p3), pt(o.c1), pt(o.c2),
                       pt(o.p4));
}

} // namespace

std::string render_snapshot(const Menu& menu, const SvgStyle& style) {
    const auto drawn = menu.visible_outlines();

    double x0 = std::numeric_limits<double>::max();
    double y0 = x0;
    double x1 = std::numeric_limits<double>::lowest();
    double y1 = x1;
    for (const auto& v : drawn) {
        x0 = std::min(x0, v.origin.x);
        x1 = std::max(x1, v.origin.x + v.outline.params.width);
        y0 = std::min(y0, v.origin.y + v.outline.p2.y);
        y1 = std::max(y1, v.origin.y + v.outline.p3.y);
    }
    if (drawn.empty()) {
        x0 = y0 = x1 = y1 = 0.0;
    }
    x0 -= style.margin;
    y0 -= style.margin;
    const double w = x1 - x0 + style.margin;
    const double h = y1 - y0 + style.margin;

    const MenuTree& tree = menu.tree();
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
        num(w), num(h), num(x0), num(y0), num(w), num(h));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                       num(x0), num(y0), num(w), num(h));

    for (const auto& v : drawn) {
        const MenuNode& node = tree.node(v.node);
        const ItemState& st = menu.state(v.node);
        const std::string& fill =
            st.hovered ? style.hover_fill : (st.open ? style.open_fill : style.fill);
        out += fmt::format(
            "<path id=\"item-{}\" d=\"{}\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"{}\" "
            "stroke-width=\"0.5\" data-z=\"{}\"/>\n",
            xml_escape(node.id), path_data(v), fill, num(v.opacity), style.stroke, v.z);
        if (style.labels) {
            const double font = node.base.height * 0.6;
            std::string label = xml_escape(node.label);
            if (!node.is_leaf()) {
                label += " ›";
            }
            out += fmt::format(
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"{}\">{}</text>\n",
                num(node.base.x + 0.3 * font), num(node.base.y + 0.5 * node.base.height + 0.35 * font),
                num(font), style.text, label);
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace wem
