#include "digitop/point.hpp"

#include <algorithm>

namespace digitop {

Point Point::slice(std::size_t first, std::size_t count) const {
  return Point(std::span<const Coord>(coords_).subspan(first, count));
}

Point Point::concat(const Point& tail) const {
  std::vector<Coord> out = coords_;
  out.insert(out.end(), tail.coords_.begin(), tail.coords_.end());
  return Point(std::move(out));
}

std::string Point::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(coords_[i]);
  }
  out += ')';
  return out;
}

}  // namespace digitop
