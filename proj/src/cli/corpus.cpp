#include "digitop/cli/corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace digitop::cli {
namespace {

ImageSpec explicit_spec(ImageSpec::Kind kind, int n,
                        const std::vector<std::pair<int, int>>& edges, std::string name) {
  ImageSpec s;
  s.kind = kind;
  s.name = std::move(name);
  for (int i = 0; i < n; ++i) s.vertices.push_back(Point{i});
  for (auto [a, b] : edges) s.edges.emplace_back(Point{a}, Point{b});
  if (kind == ImageSpec::Kind::tree) s.root = Point{0};
  return s;
}

/// AHU encoding of the subtree at v.
std::string encode(const std::vector<std::vector<int>>& adj, int v, int from) {
  std::vector<std::string> kids;
  for (int w : adj[v]) {
    if (w != from) kids.push_back(encode(adj, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

/// Canonical form of an unrooted tree: least encoding over its centers.
std::string canonical_tree(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> degree(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(adj[v].size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int w : adj[v]) {
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::string best;
  for (int c : layer) {
    auto e = encode(adj, c, -1);
    if (best.empty() || e < best) best = e;
  }
  return best;
}

}  // namespace

ImageSpec path_spec(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return explicit_spec(ImageSpec::Kind::tree, n, edges, "path" + std::to_string(n));
}

ImageSpec star_spec(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return explicit_spec(ImageSpec::Kind::tree, n, edges, "star" + std::to_string(n));
}

ImageSpec box_spec(std::vector<Bounds> bounds, int u) {
  ImageSpec s;
  s.kind = ImageSpec::Kind::box;
  s.bounds = std::move(bounds);
  s.u = u;
  return s;
}

std::vector<ImageSpec> nonisomorphic_trees(int n) {
  std::vector<ImageSpec> out;
  if (n == 1) {
    out.push_back(explicit_spec(ImageSpec::Kind::tree, 1, {}, "tree1_0"));
    return out;
  }
  std::set<std::string> seen;
  // Every labelled tree in which vertex i > 0 hangs off some j < i; this
  // reaches every isomorphism class.
  std::vector<int> parent(n, 0);
  std::function<void(int)> grow = [&](int v) {
    if (v == n) {
      std::vector<std::vector<int>> adj(n);
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i < n; ++i) {
        adj[i].push_back(parent[i]);
        adj[parent[i]].push_back(i);
        edges.emplace_back(parent[i], i);
      }
      if (seen.insert(canonical_tree(adj)).second) {
        out.push_back(explicit_spec(ImageSpec::Kind::tree, n, edges,
                                    "tree" + std::to_string(n) + "_" +
                                        std::to_string(out.size())));
      }
      return;
    }
    for (int p = 0; p < v; ++p) {
      parent[v] = p;
      grow(v + 1);
    }
  };
  grow(1);
  return out;
}

std::vector<std::vector<int>> box_shapes(std::size_t max_points, std::size_t max_dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t points) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_dim) return;
    for (std::size_t side = 1; side * points <= max_points; ++side) {
      cur.push_back(static_cast<int>(side));
      rec(points * side);
      cur.pop_back();
    }
  };
  rec(1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

ImageSpec random_small_image(std::mt19937_64& rng, std::size_t max_vertices) {
  auto draw = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };
  const int n = 1 + draw(max_vertices);
  if (draw(2) == 0) {
    // Subset of {0,1,2}^d under c_u.
    const int d = 1 + draw(3);
    std::vector<Point> grid = make_box(std::vector<Bounds>(d, Bounds{0, 2}), 1).vertices();
    for (std::size_t i = grid.size(); i > 1; --i) std::swap(grid[i - 1], grid[draw(i)]);
    ImageSpec s;
    s.kind = ImageSpec::Kind::graph;
    s.vertices.assign(grid.begin(), grid.begin() + std::min<std::size_t>(n, grid.size()));
    std::sort(s.vertices.begin(), s.vertices.end());
    s.u = 1 + draw(d);
    s.name = "grid_c" + std::to_string(s.u);
    return s;
  }
  ImageSpec s;
  s.kind = ImageSpec::Kind::graph;
  s.name = "random_graph";
  const int percent = 20 + draw(61);
  for (int i = 0; i < n; ++i) s.vertices.push_back(Point{i});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (draw(100) < percent) s.edges.emplace_back(Point{i}, Point{j});
    }
  }
  return s;
}

}  // namespace digitop::cli
