#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "digitop/error.hpp"
#include "digitop/image.hpp"
#include "digitop/map.hpp"

namespace digitop::cli {

using Json = nlohmann::ordered_json;

/// Malformed specification, map, or certificate input.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Description of an image as a small expression tree:
///
///   {"kind": "box",     "bounds": [[a1,b1], ...], "u": u}
///   {"kind": "graph",   "vertices": [p, ...], "edges": [[p,q], ...]}
///   {"kind": "graph",   "vertices": [p, ...], "u": u}      (c_u on the points)
///   {"kind": "tree",    "edges": [[p,q], ...], "root": p}
///   {"kind": "product", "left": <spec>, "right": <spec>}
///
/// Points are integer arrays; a bare integer is a one-dimensional point.
/// Every node may carry an optional "name".
struct ImageSpec {
  enum class Kind { box, graph, tree, product };

  Kind kind = Kind::box;
  std::string name;
  std::vector<Bounds> bounds;
  /// Box rule, or c_u for a graph node without explicit edges (0 = unset).
  int u = 0;
  std::vector<Point> vertices;
  std::vector<std::pair<Point, Point>> edges;
  std::optional<Point> root;
  std::shared_ptr<const ImageSpec> left;
  std::shared_ptr<const ImageSpec> right;
};

ImageSpec parse_image_spec(const Json& j);
Json to_json(const ImageSpec& spec);

/// The image a spec denotes. Tree nodes must describe trees; product nodes
/// use the normal product adjacency.
ImagePtr build_image(const ImageSpec& spec);

/// Tree root for a tree node (its "root", else the least vertex).
Point tree_root(const ImageSpec& spec, const DigitalImage& image);

Point parse_point(const Json& j);
Json point_json(const Point& p);

/// Accepts [[p, q], ...] or {"pairs": [[p, q], ...]}.
std::vector<std::pair<Point, Point>> parse_map_pairs(const Json& j);
Json map_json(const DigitalMap& f);

/// Parses `text` as inline JSON when it starts with '{' or '[', otherwise
/// reads it as a file path.
Json load_json(const std::string& text);

/// SHA-256 over the canonical byte layout of an image, as "sha256:<hex>".
///
/// Layout (all integers little-endian):
///   "digitop-image-v1" (16 ASCII bytes)
///   u64 dimension, u64 vertex count,
///   each vertex in canonical order: dimension x i64 coordinates,
///   u64 edge count, each edge (a, b) with a < b ascending: u64 a, u64 b.
std::string fingerprint(const DigitalImage& image);

}  // namespace digitop::cli
