#pragma once

#include <optional>
#include <utility>

#include "digitop/image.hpp"
#include "digitop/map.hpp"

namespace digitop {

/// X x Y under the normal product adjacency NP(kappa, lambda). Product
/// vertices are flat coordinate tuples x ++ y, split after dim(X).
struct ProductImage {
  ImagePtr base;
  ImagePtr fiber;
  ImagePtr image;

  std::size_t split() const { return base->dimension(); }
};

ProductImage np_product(const ImagePtr& base, const ImagePtr& fiber);

/// Projection onto factor 0 (base) or 1 (fiber).
DigitalMap projection(const ProductImage& product, int factor);

struct AdjacencyComparison {
  bool equal = true;
  /// First vertex pair (canonical order) on which the two relations differ.
  std::optional<std::pair<Point, Point>> first_discrepancy;
};

/// Compares NP(c_p, c_q) on X x Y with c_{p+q} on the concatenated
/// coordinates, over all vertex pairs. X and Y must carry c_u rules; when the
/// rules are full (p = dim X, q = dim Y) the two relations coincide, otherwise
/// the comparison is reported as found.
AdjacencyComparison np_equals_cu(const DigitalImage& x, const DigitalImage& y);

/// Compares (X x [0,n]^k) x [0,n] under NP(NP(kappa, c_k), c_1) with
/// X x [0,n]^(k+1) under NP(kappa, c_(k+1)), pairwise over all vertices.
AdjacencyComparison np_assoc_check(const ImagePtr& x, int k, Coord n);

/// [0,n]^dim under c_dim.
ImagePtr cube(std::size_t dim, Coord n);

}  // namespace digitop
