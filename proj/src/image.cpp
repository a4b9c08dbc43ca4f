#include "digitop/image.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "digitop/error.hpp"

namespace digitop {

DigitalImage::DigitalImage(std::vector<Point> vertices, RulePtr rule,
                           std::string name)
    : vertices_(std::move(vertices)), rule_(std::move(rule)), name_(std::move(name)) {
  if (vertices_.empty()) throw InvalidArgument("digital image must be nonempty");
  if (!rule_) throw InvalidArgument("digital image needs an adjacency rule");
  if (vertices_.size() > std::numeric_limits<VertexId>::max()) {
    throw InvalidArgument("digital image too large");
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  const std::size_t dim = vertices_.front().dimension();
  for (const auto& p : vertices_) {
    if (p.dimension() != dim) {
      throw InvalidArgument("vertices of mixed dimension: " + p.str());
    }
  }
  rule_->validate_for(dim);
  if (rule_->is_explicit()) {
    for (const auto& [a, b] : rule_->as_explicit().edges) {
      if (!contains(a) || !contains(b)) {
        throw InvalidArgument("explicit edge " + a.str() + "-" + b.str() +
                              " has an endpoint outside the image");
      }
    }
  }
}

std::optional<VertexId> DigitalImage::find(const Point& p) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
  if (it == vertices_.end() || *it != p) return std::nullopt;
  return static_cast<VertexId>(it - vertices_.begin());
}

VertexId DigitalImage::index_of(const Point& p) const {
  if (auto v = find(p)) return *v;
  throw InvalidArgument("point " + p.str() + " is not a vertex of the image");
}

bool DigitalImage::adjacent(VertexId a, VertexId b) const {
  return rule_->adjacent(vertices_.at(a).coords(), vertices_.at(b).coords());
}

std::vector<VertexId> DigitalImage::neighbors(VertexId v) const {
  if (v >= size()) throw InvalidArgument("vertex id out of range");
  std::vector<VertexId> out;
  if (rule_->is_explicit()) {
    const Point& p = vertices_[v];
    for (const auto& [a, b] : rule_->as_explicit().edges) {
      if (a == p) out.push_back(index_of(b));
      if (b == p) out.push_back(index_of(a));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for (VertexId w = 0; w < size(); ++w) {
    if (adjacent(v, w)) out.push_back(w);
  }
  return out;
}

std::vector<std::vector<VertexId>> DigitalImage::adjacency_lists() const {
  std::vector<std::vector<VertexId>> lists(size());
  for (const auto& [a, b] : edges()) {
    lists[a].push_back(b);
    lists[b].push_back(a);
  }
  for (auto& l : lists) std::sort(l.begin(), l.end());
  return lists;
}

std::vector<Edge> DigitalImage::edges() const {
  std::vector<Edge> out;
  if (rule_->is_explicit()) {
    for (const auto& [a, b] : rule_->as_explicit().edges) {
      VertexId x = index_of(a), y = index_of(b);
      out.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const auto n = static_cast<VertexId>(size());
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (adjacent(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

DigitalImage DigitalImage::sub_image(const std::vector<VertexId>& subset) const {
  std::vector<Point> pts;
  pts.reserve(subset.size());
  for (VertexId v : subset) pts.push_back(vertex(v));
  if (!rule_->is_explicit()) return DigitalImage(std::move(pts), rule_, name_);
  std::sort(pts.begin(), pts.end());
  auto inside = [&](const Point& p) {
    return std::binary_search(pts.begin(), pts.end(), p);
  };
  std::vector<std::pair<Point, Point>> kept;
  for (const auto& e : rule_->as_explicit().edges) {
    if (inside(e.first) && inside(e.second)) kept.push_back(e);
  }
  return DigitalImage(std::move(pts), AdjacencyRule::explicit_edges(std::move(kept)),
                      name_);
}

std::vector<VertexId> neighborhood(const DigitalImage& image, VertexId x,
                                   bool closed) {
  auto out = image.neighbors(x);
  if (closed) out.insert(std::lower_bound(out.begin(), out.end(), x), x);
  return out;
}

namespace {

/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(
    const std::vector<std::vector<VertexId>>& adj, VertexId source) {
  std::vector<std::size_t> dist(adj.size(), std::numeric_limits<std::size_t>::max());
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : adj[v]) {
      if (dist[w] == std::numeric_limits<std::size_t>::max()) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

bool is_connected(const DigitalImage& image) {
  const auto dist = bfs_distances(image.adjacency_lists(), 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) {
    return d == std::numeric_limits<std::size_t>::max();
  });
}

std::optional<std::vector<VertexId>> find_path(const DigitalImage& image,
                                               VertexId a, VertexId b) {
  if (a >= image.size() || b >= image.size()) {
    throw InvalidArgument("find_path: vertex id out of range");
  }
  const auto adj = image.adjacency_lists();
  const auto dist = bfs_distances(adj, b);
  if (dist[a] == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  // Walking greedily toward b through the least neighbor one step closer
  // yields the lexicographically least shortest path.
  std::vector<VertexId> path{a};
  VertexId cur = a;
  while (cur != b) {
    for (VertexId w : adj[cur]) {
      if (dist[w] + 1 == dist[cur]) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

bool is_tree(const DigitalImage& image) {
  return image.edges().size() + 1 == image.size() && is_connected(image);
}

DigitalImage make_box(const std::vector<Bounds>& bounds, int u) {
  if (bounds.empty()) throw InvalidArgument("make_box: no bounds");
  if (u < 1 || static_cast<std::size_t>(u) > bounds.size()) {
    throw InvalidArgument("make_box: u=" + std::to_string(u) + " outside [1," +
                          std::to_string(bounds.size()) + "]");
  }
  for (const auto& b : bounds) {
    if (b.lo > b.hi) {
      throw InvalidArgument("make_box: empty interval [" + std::to_string(b.lo) +
                            "," + std::to_string(b.hi) + "]");
    }
  }
  std::vector<Point> pts;
  std::vector<Coord> cur;
  for (const auto& b : bounds) cur.push_back(b.lo);
  // Odometer over the box; the last coordinate varies fastest, so the
  // output is already in lexicographic order.
  while (true) {
    pts.emplace_back(cur);
    std::size_t i = bounds.size();
    while (i > 0) {
      --i;
      if (cur[i] < bounds[i].hi) {
        ++cur[i];
        break;
      }
      cur[i] = bounds[i].lo;
      if (i == 0) return DigitalImage(std::move(pts), AdjacencyRule::cu(u));
    }
  }
}

TreeStructure tree_structure(const ImagePtr& image, VertexId root) {
  if (!image) throw InvalidArgument("tree_structure: null image");
  if (root >= image->size()) throw InvalidArgument("tree_structure: root out of range");
  if (!is_tree(*image)) throw InvalidArgument("tree_structure: image is not a tree");

  const auto adj = image->adjacency_lists();
  const auto dist = bfs_distances(adj, root);
  const std::size_t n = image->size();

  TreeStructure t;
  t.image = image;
  t.root = root;
  t.parent.assign(n, std::nullopt);
  std::vector<std::size_t> children(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    for (VertexId w : adj[v]) {
      if (dist[w] + 1 == dist[v]) {
        t.parent[v] = w;
        ++children[w];
        break;
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v != root && children[v] == 0) t.leaves.push_back(v);
  }

  std::vector<bool> removed(n, false);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    VertexId pick = 0;
    while (pick == root || removed[pick] || children[pick] != 0) ++pick;
    removed[pick] = true;
    --children[*t.parent[pick]];
    t.pruning_order.push_back(pick);
  }
  t.pruning_order.push_back(root);
  return t;
}

}  // namespace digitop
