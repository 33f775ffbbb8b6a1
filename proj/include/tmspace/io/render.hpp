#pragma once

#include <string>

#include "tmspace/diagram.hpp"

namespace tmspace::io {

enum class DiagramFormat { kAscii, kPortableBitmap, kSvg };

DiagramFormat parse_diagram_format(const std::string& name);

// ascii: one character per cell, one line per row, the bounded edge on the
//   right. '.' white, '#' black, 'o' head on white, '@' head on black.
// pbm: plain "P1" bitmap, 1 = black cell, top row first.
// svg: one rect per occupied cell; head-only cells are grey.
// pad_to_square left-pads every row with white to the diagram height.
std::string render_diagram(const SpaceTimeDiagram& diagram, DiagramFormat format, bool pad_to_square = false);

}  // namespace tmspace::io
