#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "digitop/adjacency.hpp"
#include "digitop/point.hpp"

namespace digitop {

/// Index of a vertex in its image's canonical (lexicographic) vertex order.
using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// A finite, nonempty digital image: a set of lattice points of one ambient
/// dimension together with an adjacency rule. Immutable once built.
class DigitalImage {
 public:
  /// Sorts and deduplicates `vertices`. Throws InvalidArgument for an empty
  /// vertex set, mixed dimensions, an invalid rule, or explicit edges whose
  /// endpoints are not vertices.
  DigitalImage(std::vector<Point> vertices, RulePtr rule, std::string name = {});

  std::size_t size() const { return vertices_.size(); }
  std::size_t dimension() const { return vertices_.front().dimension(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(VertexId v) const { return vertices_.at(v); }
  const AdjacencyRule& rule() const { return *rule_; }
  const RulePtr& rule_ptr() const { return rule_; }
  const std::string& name() const { return name_; }

  std::optional<VertexId> find(const Point& p) const;
  /// Like find() but throws InvalidArgument when `p` is absent.
  VertexId index_of(const Point& p) const;
  bool contains(const Point& p) const { return find(p).has_value(); }

  bool adjacent(VertexId a, VertexId b) const;
  bool adjacent_or_equal(VertexId a, VertexId b) const {
    return a == b || adjacent(a, b);
  }

  /// Open neighborhood of v, ascending.
  std::vector<VertexId> neighbors(VertexId v) const;
  /// Neighbor lists for every vertex, computed in one pass.
  std::vector<std::vector<VertexId>> adjacency_lists() const;
  /// All edges (a, b) with a < b, ascending.
  std::vector<Edge> edges() const;

  /// The sub-image on `subset` (ids of this image) under the same rule.
  /// Explicit edges leaving the subset are dropped.
  DigitalImage sub_image(const std::vector<VertexId>& subset) const;

  friend bool operator==(const DigitalImage& a, const DigitalImage& b) {
    return a.vertices_ == b.vertices_ && *a.rule_ == *b.rule_;
  }

 private:
  std::vector<Point> vertices_;
  RulePtr rule_;
  std::string name_;
};

using ImagePtr = std::shared_ptr<const DigitalImage>;

inline ImagePtr share(DigitalImage image) {
  return std::make_shared<const DigitalImage>(std::move(image));
}

/// N(X, x) when `closed` is false, N*(X, x) = N(X, x) + {x} otherwise.
std::vector<VertexId> neighborhood(const DigitalImage& image, VertexId x,
                                   bool closed);

bool is_connected(const DigitalImage& image);

/// A shortest path from a to b; among shortest paths, the lexicographically
/// least sequence of vertex ids. std::nullopt when a and b are in different
/// components.
std::optional<std::vector<VertexId>> find_path(const DigitalImage& image,
                                               VertexId a, VertexId b);

/// Connected with |E| = |V| - 1.
bool is_tree(const DigitalImage& image);

struct Bounds {
  Coord lo;
  Coord hi;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// All integer points of prod [lo_i, hi_i] under c_u. Requires lo_i <= hi_i
/// and 1 <= u <= bounds.size().
DigitalImage make_box(const std::vector<Bounds>& bounds, int u);

/// Rooted tree view of an acyclic connected image.
struct TreeStructure {
  ImagePtr image;
  VertexId root = 0;
  /// parent[root] is empty; every other entry is the next vertex on the
  /// unique path to the root.
  std::vector<std::optional<VertexId>> parent;
  /// Non-root vertices without children, ascending.
  std::vector<VertexId> leaves;
  /// Repeatedly the least current leaf other than the root; root last.
  std::vector<VertexId> pruning_order;
};

/// Throws InvalidArgument if the image is not a tree or root is out of range.
TreeStructure tree_structure(const ImagePtr& image, VertexId root);

}  // namespace digitop
