#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "digitop/image.hpp"

namespace digitop {

/// A total function between two digital images stored as an explicit table
/// indexed by domain vertex id. Continuity is not enforced; ask is_continuous.
class DigitalMap {
 public:
  DigitalMap(ImagePtr domain, ImagePtr codomain, std::vector<VertexId> table);

  /// Builds a map from (domain point, image point) pairs; every domain vertex
  /// must appear exactly once.
  static DigitalMap from_pairs(ImagePtr domain, ImagePtr codomain,
                               const std::vector<std::pair<Point, Point>>& pairs);
  static DigitalMap identity(const ImagePtr& image);
  static DigitalMap constant(const ImagePtr& domain, const ImagePtr& codomain,
                             VertexId value);

  const DigitalImage& domain() const { return *domain_; }
  const DigitalImage& codomain() const { return *codomain_; }
  const ImagePtr& domain_ptr() const { return domain_; }
  const ImagePtr& codomain_ptr() const { return codomain_; }
  const std::vector<VertexId>& table() const { return table_; }

  VertexId operator()(VertexId x) const { return table_.at(x); }
  /// Image of a domain point, as a codomain point.
  const Point& operator()(const Point& x) const;

  bool is_self_map() const;

  /// (domain point, image point) pairs in canonical domain order.
  std::vector<std::pair<Point, Point>> pairs() const;

  friend bool operator==(const DigitalMap& a, const DigitalMap& b);

 private:
  ImagePtr domain_;
  ImagePtr codomain_;
  std::vector<VertexId> table_;
};

/// First adjacent domain pair (x, x') in canonical order whose images are
/// neither equal nor adjacent.
std::optional<Edge> find_continuity_violation(const DigitalMap& f);

inline bool is_continuous(const DigitalMap& f) {
  return !find_continuity_violation(f).has_value();
}

/// g after f. Requires f's codomain to equal g's domain.
DigitalMap compose(const DigitalMap& g, const DigitalMap& f);

/// f restricted to `subset` (domain ids), whose sub-image inherits the
/// domain's rule. The codomain is unchanged.
DigitalMap restrict(const DigitalMap& f, const std::vector<VertexId>& subset);

/// True when `sub`'s vertices lie in `whole` and `sub` carries the adjacency
/// `whole` induces on them.
bool is_sub_image(const DigitalImage& sub, const DigitalImage& whole);

/// r: X -> Y with Y a sub-image of X, continuous and fixing Y pointwise.
/// Throws InvalidArgument if the codomain is not a sub-image of the domain.
bool is_retraction(const DigitalMap& r);

/// All x with f(x) = x or f(x) adjacent to x. Requires a self-map.
std::vector<VertexId> approximate_fixed_points(const DigitalMap& f);

/// Whether x is an approximate fixed point of the self-map f.
bool is_approximate_fixed_point(const DigitalMap& f, VertexId x);

}  // namespace digitop
