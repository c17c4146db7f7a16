#include <sstream>

#include "lensembed/changemaker.hpp"

namespace lensembed {

// Peels m_i squares of side a_i off the long side of the current rectangle,
// starting from the a_j x a_{j+1} rectangle and descending to unit squares.
std::vector<Square> weight_tiling(const WeightExpansion& w) {
  std::vector<Square> tiles;
  std::int64_t x = 0, y = 0;
  std::int64_t width = w.height(), height = w.width();
  for (std::size_t i = w.multiplicities.size(); i-- > 0;) {
    std::int64_t side = w.anchors[i + 1];
    std::int64_t count = w.multiplicities[i];
    bool horizontal = width >= height;
    for (std::int64_t c = 0; c < count; ++c) {
      tiles.push_back({x, y, side});
      if (horizontal) {
        x += side;
        width -= side;
      } else {
        y += side;
        height -= side;
      }
    }
  }
  if (width * height != 0) throw std::logic_error("weight tiling did not close up");
  return tiles;
}

std::string tiling_svg(const WeightExpansion& w, double unit) {
  auto tiles = weight_tiling(w);
  double total_w = static_cast<double>(w.height()) * unit;
  double total_h = static_cast<double>(w.width()) * unit;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w + 2 << "\" height=\"" << total_h + 2
     << "\" viewBox=\"-1 -1 " << total_w + 2 << ' ' << total_h + 2 << "\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << total_w << "\" height=\"" << total_h
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& t : tiles) {
    double s = static_cast<double>(t.side) * unit;
    double x = static_cast<double>(t.x) * unit;
    double y = static_cast<double>(t.y) * unit;
    os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << s << "\" height=\"" << s
       << "\" fill=\"#e8eef7\" stroke=\"#1f3b63\" stroke-width=\"0.5\"/>\n";
    if (s >= 2 * unit) {
      os << "  <text x=\"" << x + s / 2 << "\" y=\"" << y + s / 2 << "\" font-size=\"" << std::min(s / 3, 4 * unit)
         << "\" text-anchor=\"middle\" dominant-baseline=\"central\">" << t.side << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lensembed
