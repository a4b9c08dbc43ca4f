#pragma once

#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "digitop/point.hpp"

namespace digitop {

class AdjacencyRule;
using RulePtr = std::shared_ptr<const AdjacencyRule>;

/// True iff x != y, at most u coordinates differ, and each differing
/// coordinate differs by exactly one. Throws InvalidArgument on a dimension
/// mismatch or when u is outside [1, n].
bool cu_adjacent(const Point& x, const Point& y, int u);

/// An adjacency relation on points of a fixed ambient dimension.
///
/// Three kinds exist: the c_u rule (computed from coordinates), an explicit
/// symmetric edge set over points, and the normal product of two rules applied
/// to the two halves of a coordinate tuple split at `split`.
class AdjacencyRule {
 public:
  struct Cu {
    int u;
    friend bool operator==(const Cu&, const Cu&) = default;
  };
  struct Explicit {
    // Sorted, deduplicated, each pair stored with first < second.
    std::vector<std::pair<Point, Point>> edges;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  struct NormalProduct {
    RulePtr left;
    RulePtr right;
    std::size_t split;
  };

  static RulePtr cu(int u);
  /// Edges may be given in either orientation and with repeats; self-loops
  /// are rejected.
  static RulePtr explicit_edges(std::vector<std::pair<Point, Point>> edges);
  static RulePtr normal_product(RulePtr left, RulePtr right, std::size_t split);

  bool is_cu() const { return std::holds_alternative<Cu>(kind_); }
  bool is_explicit() const { return std::holds_alternative<Explicit>(kind_); }
  bool is_normal_product() const {
    return std::holds_alternative<NormalProduct>(kind_);
  }
  const Cu& as_cu() const { return std::get<Cu>(kind_); }
  const Explicit& as_explicit() const { return std::get<Explicit>(kind_); }
  const NormalProduct& as_normal_product() const {
    return std::get<NormalProduct>(kind_);
  }

  /// Throws InvalidArgument if the rule cannot act on `dimension`-tuples.
  void validate_for(std::size_t dimension) const;

  /// Irreflexive: equal tuples are never adjacent.
  bool adjacent(std::span<const Coord> a, std::span<const Coord> b) const;
  bool adjacent_or_equal(std::span<const Coord> a,
                         std::span<const Coord> b) const;

  /// Structural equality (NP rules compare their factors recursively).
  friend bool operator==(const AdjacencyRule& a, const AdjacencyRule& b);

  std::string describe() const;

 private:
  using Kind = std::variant<Cu, Explicit, NormalProduct>;
  explicit AdjacencyRule(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

}  // namespace digitop
