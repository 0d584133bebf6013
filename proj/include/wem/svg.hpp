#pragma once

#include "wem/menu.hpp"

#include <string>

namespace wem {

struct SvgStyle {
    double margin = 8.0;
    std::string fill = "#f4f4f4";
    std::string open_fill = "#cfe0f5";
    std::string hover_fill = "#9cc1ea";
    std::string stroke = "#5a5a5a";
    std::string text = "#1a1a1a";
    bool labels = true;
};

/// Standalone SVG of the visible outlines in draw order. Each item is
/// followed by its label so that a translucent wing leaves the labels of
/// the siblings it covers readable. Rectangular outlines are emitted with
/// straight segments only; expanded outlines use one cubic for the wing.
std::string render_snapshot(const Menu& menu, const SvgStyle& style = {});

} // namespace wem
