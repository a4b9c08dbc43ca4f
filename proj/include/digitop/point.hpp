#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace digitop {

using Coord = std::int64_t;

/// A lattice point of Z^n. Points order lexicographically, which is the
/// canonical vertex order used everywhere in the library.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<Coord> coords) : coords_(coords) {}
  explicit Point(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  explicit Point(std::span<const Coord> coords)
      : coords_(coords.begin(), coords.end()) {}

  std::size_t dimension() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Coord> coords() const { return coords_; }

  /// Coordinates [first, first + count).
  Point slice(std::size_t first, std::size_t count) const;
  /// This point followed by the coordinates of `tail`.
  Point concat(const Point& tail) const;

  std::string str() const;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Coord> coords_;
};

}  // namespace digitop
