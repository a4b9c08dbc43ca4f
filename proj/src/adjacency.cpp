#include "digitop/adjacency.hpp"

#include <algorithm>
#include <cstdlib>

#include "digitop/error.hpp"

namespace digitop {
namespace {

bool cu_adjacent_unchecked(std::span<const Coord> a, std::span<const Coord> b,
                           int u) {
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Coord d = a[i] - b[i];
    if (d == 0) continue;
    if (d != 1 && d != -1) return false;
    if (++differing > u) return false;
  }
  return differing > 0;
}

}  // namespace

bool cu_adjacent(const Point& x, const Point& y, int u) {
  if (x.dimension() != y.dimension()) {
    throw InvalidArgument("cu_adjacent: dimension mismatch between " +
                          x.str() + " and " + y.str());
  }
  if (u < 1 || static_cast<std::size_t>(u) > x.dimension()) {
    throw InvalidArgument("cu_adjacent: u=" + std::to_string(u) +
                          " outside [1," + std::to_string(x.dimension()) + "]");
  }
  return cu_adjacent_unchecked(x.coords(), y.coords(), u);
}

RulePtr AdjacencyRule::cu(int u) {
  if (u < 1) throw InvalidArgument("c_u rule needs u >= 1");
  return RulePtr(new AdjacencyRule(Cu{u}));
}

RulePtr AdjacencyRule::explicit_edges(
    std::vector<std::pair<Point, Point>> edges) {
  for (auto& [a, b] : edges) {
    if (a == b) throw InvalidArgument("explicit edge is a self-loop at " + a.str());
    if (a.dimension() != b.dimension()) {
      throw InvalidArgument("explicit edge joins points of different dimension");
    }
    if (b < a) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return RulePtr(new AdjacencyRule(Explicit{std::move(edges)}));
}

RulePtr AdjacencyRule::normal_product(RulePtr left, RulePtr right,
                                      std::size_t split) {
  if (!left || !right) throw InvalidArgument("normal product of a null rule");
  if (split == 0) throw InvalidArgument("normal product split must be positive");
  return RulePtr(
      new AdjacencyRule(NormalProduct{std::move(left), std::move(right), split}));
}

void AdjacencyRule::validate_for(std::size_t dimension) const {
  if (dimension == 0) throw InvalidArgument("points must have dimension >= 1");
  if (const auto* c = std::get_if<Cu>(&kind_)) {
    if (static_cast<std::size_t>(c->u) > dimension) {
      throw InvalidArgument("c_" + std::to_string(c->u) +
                            " rule applied in dimension " +
                            std::to_string(dimension));
    }
  } else if (const auto* e = std::get_if<Explicit>(&kind_)) {
    for (const auto& [a, b] : e->edges) {
      if (a.dimension() != dimension) {
        throw InvalidArgument("explicit edge endpoint " + a.str() +
                              " has the wrong dimension");
      }
    }
  } else {
    const auto& np = std::get<NormalProduct>(kind_);
    if (np.split >= dimension) {
      throw InvalidArgument("normal product split " + std::to_string(np.split) +
                            " does not divide dimension " +
                            std::to_string(dimension));
    }
    np.left->validate_for(np.split);
    np.right->validate_for(dimension - np.split);
  }
}

bool AdjacencyRule::adjacent(std::span<const Coord> a,
                             std::span<const Coord> b) const {
  if (const auto* c = std::get_if<Cu>(&kind_)) {
    return cu_adjacent_unchecked(a, b, c->u);
  }
  if (const auto* e = std::get_if<Explicit>(&kind_)) {
    Point pa(a), pb(b);
    if (pa == pb) return false;
    if (pb < pa) std::swap(pa, pb);
    return std::binary_search(e->edges.begin(), e->edges.end(),
                              std::make_pair(pa, pb));
  }
  const auto& np = std::get<NormalProduct>(kind_);
  const auto s = np.split;
  const bool left_eq = std::equal(a.begin(), a.begin() + s, b.begin());
  const bool right_eq = std::equal(a.begin() + s, a.end(), b.begin() + s);
  if (left_eq && right_eq) return false;
  const bool left_ok = left_eq || np.left->adjacent(a.first(s), b.first(s));
  if (!left_ok) return false;
  return right_eq || np.right->adjacent(a.subspan(s), b.subspan(s));
}

bool AdjacencyRule::adjacent_or_equal(std::span<const Coord> a,
                                      std::span<const Coord> b) const {
  return std::equal(a.begin(), a.end(), b.begin(), b.end()) || adjacent(a, b);
}

bool operator==(const AdjacencyRule& a, const AdjacencyRule& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  if (a.is_cu()) return a.as_cu() == b.as_cu();
  if (a.is_explicit()) return a.as_explicit() == b.as_explicit();
  const auto& x = a.as_normal_product();
  const auto& y = b.as_normal_product();
  return x.split == y.split && *x.left == *y.left && *x.right == *y.right;
}

std::string AdjacencyRule::describe() const {
  if (const auto* c = std::get_if<Cu>(&kind_)) {
    return "c_" + std::to_string(c->u);
  }
  if (const auto* e = std::get_if<Explicit>(&kind_)) {
    return "explicit(" + std::to_string(e->edges.size()) + " edges)";
  }
  const auto& np = std::get<NormalProduct>(kind_);
  return "NP(" + np.left->describe() + "," + np.right->describe() + ")";
}

}  // namespace digitop
