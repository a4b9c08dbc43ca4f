#include "digitop/map.hpp"

#include <algorithm>

#include "digitop/error.hpp"

namespace digitop {

DigitalMap::DigitalMap(ImagePtr domain, ImagePtr codomain,
                       std::vector<VertexId> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  if (!domain_ || !codomain_) throw InvalidArgument("digital map with null image");
  if (table_.size() != domain_->size()) {
    throw InvalidArgument("map table has " + std::to_string(table_.size()) +
                          " entries for a domain of " +
                          std::to_string(domain_->size()) + " vertices");
  }
  for (VertexId y : table_) {
    if (y >= codomain_->size()) throw InvalidArgument("map value outside codomain");
  }
}

DigitalMap DigitalMap::from_pairs(ImagePtr domain, ImagePtr codomain,
                                  const std::vector<std::pair<Point, Point>>& pairs) {
  if (!domain || !codomain) throw InvalidArgument("digital map with null image");
  std::vector<std::optional<VertexId>> slots(domain->size());
  for (const auto& [x, y] : pairs) {
    VertexId from = domain->index_of(x);
    VertexId to = codomain->index_of(y);
    if (slots[from]) throw InvalidArgument("map assigns " + x.str() + " twice");
    slots[from] = to;
  }
  std::vector<VertexId> table;
  table.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      throw InvalidArgument("map is not total: " + domain->vertex(i).str() +
                            " has no image");
    }
    table.push_back(*slots[i]);
  }
  return DigitalMap(std::move(domain), std::move(codomain), std::move(table));
}

DigitalMap DigitalMap::identity(const ImagePtr& image) {
  std::vector<VertexId> table(image->size());
  for (VertexId v = 0; v < table.size(); ++v) table[v] = v;
  return DigitalMap(image, image, std::move(table));
}

DigitalMap DigitalMap::constant(const ImagePtr& domain, const ImagePtr& codomain,
                                VertexId value) {
  return DigitalMap(domain, codomain, std::vector<VertexId>(domain->size(), value));
}

const Point& DigitalMap::operator()(const Point& x) const {
  return codomain_->vertex(table_[domain_->index_of(x)]);
}

bool DigitalMap::is_self_map() const {
  return domain_ == codomain_ || *domain_ == *codomain_;
}

std::vector<std::pair<Point, Point>> DigitalMap::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  out.reserve(table_.size());
  for (VertexId x = 0; x < table_.size(); ++x) {
    out.emplace_back(domain_->vertex(x), codomain_->vertex(table_[x]));
  }
  return out;
}

bool operator==(const DigitalMap& a, const DigitalMap& b) {
  return a.table_ == b.table_ && *a.domain_ == *b.domain_ &&
         *a.codomain_ == *b.codomain_;
}

std::optional<Edge> find_continuity_violation(const DigitalMap& f) {
  for (const auto& [a, b] : f.domain().edges()) {
    if (!f.codomain().adjacent_or_equal(f(a), f(b))) return Edge{a, b};
  }
  return std::nullopt;
}

DigitalMap compose(const DigitalMap& g, const DigitalMap& f) {
  if (!(f.codomain() == g.domain())) {
    throw InvalidArgument("compose: codomain of f differs from domain of g");
  }
  std::vector<VertexId> table(f.table().size());
  for (VertexId x = 0; x < table.size(); ++x) table[x] = g(f(x));
  return DigitalMap(f.domain_ptr(), g.codomain_ptr(), std::move(table));
}

DigitalMap restrict(const DigitalMap& f, const std::vector<VertexId>& subset) {
  if (subset.empty()) throw InvalidArgument("restrict: empty subset");
  for (VertexId v : subset) {
    if (v >= f.domain().size()) throw InvalidArgument("restrict: subset not in domain");
  }
  auto sub = share(f.domain().sub_image(subset));
  std::vector<VertexId> table(sub->size());
  for (VertexId v = 0; v < table.size(); ++v) {
    table[v] = f(f.domain().index_of(sub->vertex(v)));
  }
  return DigitalMap(std::move(sub), f.codomain_ptr(), std::move(table));
}

bool is_sub_image(const DigitalImage& sub, const DigitalImage& whole) {
  for (const auto& p : sub.vertices()) {
    if (!whole.contains(p)) return false;
  }
  if (sub.rule() == whole.rule()) return true;
  if (!sub.rule().is_explicit() || !whole.rule().is_explicit()) return false;
  std::vector<std::pair<Point, Point>> induced;
  for (const auto& e : whole.rule().as_explicit().edges) {
    if (sub.contains(e.first) && sub.contains(e.second)) induced.push_back(e);
  }
  return induced == sub.rule().as_explicit().edges;
}

bool is_retraction(const DigitalMap& r) {
  if (!is_sub_image(r.codomain(), r.domain())) {
    throw InvalidArgument("is_retraction: codomain is not a sub-image of the domain");
  }
  for (VertexId y = 0; y < r.codomain().size(); ++y) {
    const Point& p = r.codomain().vertex(y);
    if (r(p) != p) return false;
  }
  return is_continuous(r);
}

std::vector<VertexId> approximate_fixed_points(const DigitalMap& f) {
  if (!f.is_self_map()) throw InvalidArgument("approximate_fixed_points: not a self-map");
  std::vector<VertexId> out;
  for (VertexId x = 0; x < f.domain().size(); ++x) {
    if (f.domain().adjacent_or_equal(x, f(x))) out.push_back(x);
  }
  return out;
}

bool is_approximate_fixed_point(const DigitalMap& f, VertexId x) {
  if (!f.is_self_map()) throw InvalidArgument("not a self-map");
  return f.domain().adjacent_or_equal(x, f(x));
}

}  // namespace digitop
