#include "tmspace/io/render.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tmspace::io {

DiagramFormat parse_diagram_format(const std::string& name) {
  if (name == "ascii") return DiagramFormat::kAscii;
  if (name == "pbm" || name == "portable-bitmap") return DiagramFormat::kPortableBitmap;
  if (name == "svg" || name == "scalable-vector") return DiagramFormat::kSvg;
  throw std::invalid_argument("unknown diagram format '" + name + "' (ascii, pbm, svg)");
}

namespace {

constexpr int kCell = 8;

}  // namespace

std::string render_diagram(const SpaceTimeDiagram& d, DiagramFormat format, bool pad_to_square) {
  const std::uint64_t columns = pad_to_square ? std::max(d.width, d.height()) : d.width;
  // Column c shows tape index columns-1-c.
  auto index_of = [&](std::uint64_t column) { return columns - 1 - column; };
  std::ostringstream out;
  switch (format) {
    case DiagramFormat::kAscii:
      for (std::uint64_t r = 0; r < d.height(); ++r) {
        std::string line(columns, '.');
        for (std::uint64_t c = 0; c < columns; ++c) {
          const std::uint64_t i = index_of(c);
          const bool black = d.cell(r, i) != kWhite;
          const bool head = d.head_track[r] == static_cast<std::int64_t>(i);
          line[c] = head ? (black ? '@' : 'o') : (black ? '#' : '.');
        }
        out << line << '\n';
      }
      break;
    case DiagramFormat::kPortableBitmap:
      out << "P1\n" << columns << ' ' << d.height() << '\n';
      for (std::uint64_t r = 0; r < d.height(); ++r) {
        for (std::uint64_t c = 0; c < columns; ++c) {
          if (c) out << ' ';
          out << (d.cell(r, index_of(c)) != kWhite ? '1' : '0');
        }
        out << '\n';
      }
      break;
    case DiagramFormat::kSvg:
      out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << columns * kCell << "\" height=\""
          << d.height() * kCell << "\" viewBox=\"0 0 " << columns * kCell << ' ' << d.height() * kCell << "\">\n";
      out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g>\n";
      for (std::uint64_t r = 0; r < d.height(); ++r) {
        for (std::uint64_t c = 0; c < columns; ++c) {
          const std::uint64_t i = index_of(c);
          if (!d.occupied(r, i)) continue;
          const char* fill = d.cell(r, i) != kWhite ? "black" : "grey";
          out << "<rect x=\"" << c * kCell << "\" y=\"" << r * kCell << "\" width=\"" << kCell << "\" height=\""
              << kCell << "\" fill=\"" << fill << "\"/>\n";
        }
      }
      out << "</g>\n</svg>\n";
      break;
  }
  return out.str();
}

}  // namespace tmspace::io
