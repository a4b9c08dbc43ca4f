#include "digitop/product.hpp"

#include "digitop/error.hpp"

namespace digitop {

ProductImage np_product(const ImagePtr& base, const ImagePtr& fiber) {
  if (!base || !fiber) throw InvalidArgument("np_product: null factor");
  std::vector<Point> pts;
  pts.reserve(base->size() * fiber->size());
  for (const auto& x : base->vertices()) {
    for (const auto& y : fiber->vertices()) pts.push_back(x.concat(y));
  }
  auto rule = AdjacencyRule::normal_product(base->rule_ptr(), fiber->rule_ptr(),
                                            base->dimension());
  std::string name;
  if (!base->name().empty() || !fiber->name().empty()) {
    name = base->name() + "x" + fiber->name();
  }
  return ProductImage{base, fiber,
                      share(DigitalImage(std::move(pts), std::move(rule), std::move(name)))};
}

DigitalMap projection(const ProductImage& product, int factor) {
  if (factor != 0 && factor != 1) {
    throw InvalidArgument("projection: factor index must be 0 or 1");
  }
  const auto& target = factor == 0 ? product.base : product.fiber;
  const std::size_t split = product.split();
  const auto& img = *product.image;
  std::vector<VertexId> table(img.size());
  for (VertexId v = 0; v < img.size(); ++v) {
    const Point& p = img.vertex(v);
    table[v] = target->index_of(factor == 0 ? p.slice(0, split)
                                            : p.slice(split, p.dimension() - split));
  }
  return DigitalMap(product.image, target, std::move(table));
}

AdjacencyComparison np_equals_cu(const DigitalImage& x, const DigitalImage& y) {
  if (!x.rule().is_cu() || !y.rule().is_cu()) {
    throw InvalidArgument("np_equals_cu: both factors need c_u rules, got " +
                          x.rule().describe() + " and " + y.rule().describe());
  }
  const int u = x.rule().as_cu().u + y.rule().as_cu().u;
  auto np = AdjacencyRule::normal_product(x.rule_ptr(), y.rule_ptr(), x.dimension());
  std::vector<Point> pts;
  for (const auto& a : x.vertices()) {
    for (const auto& b : y.vertices()) pts.push_back(a.concat(b));
  }
  AdjacencyComparison out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (np->adjacent(pts[i].coords(), pts[j].coords()) !=
          cu_adjacent(pts[i], pts[j], u)) {
        out.equal = false;
        out.first_discrepancy = std::make_pair(pts[i], pts[j]);
        return out;
      }
    }
  }
  return out;
}

ImagePtr cube(std::size_t dim, Coord n) {
  return share(make_box(std::vector<Bounds>(dim, Bounds{0, n}), static_cast<int>(dim)));
}

AdjacencyComparison np_assoc_check(const ImagePtr& x, int k, Coord n) {
  if (k < 1 || n < 1) throw InvalidArgument("np_assoc_check: need k >= 1 and n >= 1");
  const auto nested =
      np_product(np_product(x, cube(static_cast<std::size_t>(k), n)).image, cube(1, n)).image;
  const auto flat = np_product(x, cube(static_cast<std::size_t>(k) + 1, n)).image;
  // Flat tuples make re-association the identity on vertices.
  if (nested->vertices() != flat->vertices()) {
    throw CertificateFailure("np_assoc_check: re-associated vertex sets differ");
  }
  AdjacencyComparison out;
  const auto size = static_cast<VertexId>(flat->size());
  for (VertexId i = 0; i < size; ++i) {
    for (VertexId j = i + 1; j < size; ++j) {
      if (nested->adjacent(i, j) != flat->adjacent(i, j)) {
        out.equal = false;
        out.first_discrepancy = std::make_pair(flat->vertex(i), flat->vertex(j));
        return out;
      }
    }
  }
  return out;
}

}  // namespace digitop
