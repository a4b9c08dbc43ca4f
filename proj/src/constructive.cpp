#include "digitop/constructive.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "digitop/error.hpp"
#include "digitop/product.hpp"

namespace digitop {
namespace {

bool same_image(const ImagePtr& a, const ImagePtr& b) { return a == b || *a == *b; }

void require_continuous_self_map(const DigitalMap& f, const ImagePtr& image,
                                 const char* who) {
  if (!same_image(f.domain_ptr(), image) || !same_image(f.codomain_ptr(), image)) {
    throw InvalidArgument(std::string(who) + ": map is not a self-map of the expected image");
  }
  if (auto bad = find_continuity_violation(f)) {
    throw DiscontinuousMap(std::string(who) + ": map is not continuous at " +
                           f.domain().vertex(bad->first).str() + " ~ " +
                           f.domain().vertex(bad->second).str());
  }
}

VertexId verified(const DigitalMap& f, VertexId x, const char* who) {
  if (!f.domain().adjacent_or_equal(x, f(x))) {
    throw CertificateFailure(std::string(who) + ": " + f.domain().vertex(x).str() +
                             " is not an approximate fixed point");
  }
  return x;
}

std::vector<VertexId> all_but(std::size_t n, VertexId skip) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (v != skip) out.push_back(v);
  }
  return out;
}

}  // namespace

BuilderInstance::BuilderInstance(ImagePtr extended, VertexId removed,
                                 DigitalMap retraction)
    : extended_(std::move(extended)), removed_(removed), retraction_(std::move(retraction)) {
  if (removed_ >= extended_->size()) throw InvalidArgument("builder: removed vertex out of range");
  if (!same_image(retraction_.domain_ptr(), extended_)) {
    throw InvalidArgument("builder: retraction must be defined on the extended image");
  }
  const DigitalImage& base = retraction_.codomain();
  if (base.size() + 1 != extended_->size() || base.contains(extended_->vertex(removed_))) {
    throw InvalidArgument("builder: codomain must be the extended image minus one vertex");
  }
  if (!is_retraction(retraction_)) {
    throw InvalidArgument("builder: map is not a retraction");
  }
  lift_.resize(base.size());
  for (VertexId v = 0; v < base.size(); ++v) lift_[v] = extended_->index_of(base.vertex(v));

  const VertexId target = lift_[retraction_(removed_)];
  const auto inner = neighborhood(*extended_, removed_, true);
  const auto outer = neighborhood(*extended_, target, true);
  if (!std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) {
    throw InvalidArgument("builder: N*(x0) is not contained in N*(r(x0))");
  }
}

BuilderInstance BuilderInstance::collapse(const ImagePtr& extended, VertexId removed,
                                          VertexId target) {
  if (removed >= extended->size() || target >= extended->size() || removed == target) {
    throw InvalidArgument("builder: bad collapse vertices");
  }
  auto base = share(extended->sub_image(all_but(extended->size(), removed)));
  std::vector<VertexId> table(extended->size());
  for (VertexId v = 0; v < table.size(); ++v) {
    table[v] = base->index_of(extended->vertex(v == removed ? target : v));
  }
  return BuilderInstance(extended, removed, DigitalMap(extended, base, std::move(table)));
}

DigitalMap BuilderInstance::reduce(const DigitalMap& f) const {
  if (!same_image(f.domain_ptr(), extended_)) {
    throw InvalidArgument("builder: map is not defined on the extended image");
  }
  std::vector<VertexId> table(lift_.size());
  for (VertexId y = 0; y < table.size(); ++y) table[y] = retraction_(f(lift_[y]));
  return DigitalMap(base(), base(), std::move(table));
}

VertexId builder_step(const BuilderInstance& inst, const DigitalMap& f, VertexId y) {
  if (!same_image(f.domain_ptr(), inst.extended()) ||
      !same_image(f.codomain_ptr(), inst.extended())) {
    throw InvalidArgument("builder_step: f is not a self-map of the extended image");
  }
  const DigitalImage& base = *inst.base();
  if (y >= base.size()) throw InvalidArgument("builder_step: y out of range");
  const VertexId fy = f(inst.lift(y));
  const VertexId gy = inst.retraction()(fy);
  if (!base.adjacent_or_equal(y, gy)) {
    throw InvalidArgument("builder_step: " + base.vertex(y).str() +
                          " is not an approximate fixed point of r o f");
  }
  const VertexId result = fy != inst.removed() ? inst.lift(y) : inst.lift(gy);
  return verified(f, result, "builder_step");
}

TreeAfpFinder::TreeAfpFinder(TreeStructure tree) : tree_(std::move(tree)) {
  ImagePtr current = tree_.image;
  const auto& order = tree_.pruning_order;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const VertexId leaf = order[i];
    const Point& leaf_pt = tree_.image->vertex(leaf);
    const Point& parent_pt = tree_.image->vertex(*tree_.parent[leaf]);
    steps_.push_back(BuilderInstance::collapse(current, current->index_of(leaf_pt),
                                               current->index_of(parent_pt)));
    current = steps_.back().base();
  }
}

VertexId TreeAfpFinder::find(const DigitalMap& f) const {
  require_continuous_self_map(f, tree_.image, "tree_afp");
  std::vector<DigitalMap> levels{f};
  levels.reserve(steps_.size() + 1);
  for (const auto& step : steps_) levels.push_back(step.reduce(levels.back()));
  // The last level is the root alone.
  VertexId y = 0;
  for (std::size_t i = steps_.size(); i-- > 0;) y = builder_step(steps_[i], levels[i], y);
  return verified(f, y, "tree_afp");
}

VertexId tree_afp(const TreeStructure& tree, const DigitalMap& f) {
  return TreeAfpFinder(tree).find(f);
}

IntervalAfpFinder::IntervalAfpFinder(ImagePtr interval) : image_(std::move(interval)) {
  const auto& img = *image_;
  const bool cu1 = img.rule().is_cu() && img.rule().as_cu().u == 1;
  if (img.dimension() != 1 || !cu1 ||
      img.vertices().back()[0] - img.vertices().front()[0] + 1 !=
          static_cast<Coord>(img.size())) {
    throw InvalidArgument("interval finder needs an interval [a,b] under c_1");
  }
}

VertexId IntervalAfpFinder::find(const DigitalMap& f) const {
  require_continuous_self_map(f, image_, "interval_afp");
  for (VertexId t = 0; t < image_->size(); ++t) {
    if (std::llabs(static_cast<long long>(f(t)) - static_cast<long long>(t)) <= 1) {
      return verified(f, t, "interval_afp");
    }
  }
  throw CertificateFailure("interval_afp: no approximate fixed point on an interval");
}

VertexId ScanAfpFinder::find(const DigitalMap& f) const {
  require_continuous_self_map(f, image_, "scan_afp");
  const auto afps = approximate_fixed_points(f);
  if (afps.empty()) throw NoApproximateFixedPoint("map has no approximate fixed point");
  return afps.front();
}

ImagePtr product_with_cube(const ImagePtr& base, std::size_t v, Coord n) {
  if (v == 0) return base;
  return np_product(base, cube(v, n)).image;
}

namespace {

/// The recursions behind product_afp, operating on explicit tables over the
/// canonical vertex order of X x [0,n]^v (identical for every grouping of the
/// factors, since vertices are flat tuples).
class CubeExtension {
 public:
  CubeExtension(ImagePtr base_image, Coord n, const AfpFinder& base)
      : base_image_(std::move(base_image)), n_(n), base_(base) {}

  VertexId solve(std::size_t v, std::vector<VertexId> table) const {
    if (v == 0) {
      DigitalMap g(base_image_, base_image_, std::move(table));
      return verified(g, base_.find(g), "product_afp base finder");
    }
    // (X x [0,n]^(v-1)) x [0,n] under NP(NP(kappa, c_(v-1)), c_1).
    auto lower = product_with_cube(base_image_, v - 1, n_);
    auto regrouped = np_product(lower, cube(1, n_)).image;
    DigitalMap top(regrouped, regrouped, std::move(table));
    return extend(v, n_, top);
  }

 private:
  /// `f` is a self-map of Z x [0,k] (a sub-image of Z x [0,n]).
  VertexId extend(std::size_t v, Coord k, const DigitalMap& f) const {
    const DigitalImage& slab = f.domain();
    if (k == 0) {
      // Z x {0} lists its vertices in the same order as Z.
      return solve(v - 1, f.table());
    }
    const std::size_t last = slab.dimension() - 1;
    std::vector<VertexId> keep;
    for (VertexId s = 0; s < slab.size(); ++s) {
      if (slab.vertex(s)[last] < k) keep.push_back(s);
    }
    auto lower = share(slab.sub_image(keep));
    auto clamp = [&](const Point& p) {
      if (p[last] < k) return lower->index_of(p);
      std::vector<Coord> c(p.coords().begin(), p.coords().end());
      c[last] = k - 1;
      return lower->index_of(Point(std::move(c)));
    };
    // g = r o f o inclusion on Z x [0,k-1].
    std::vector<VertexId> g_table(lower->size());
    for (VertexId s = 0; s < lower->size(); ++s) {
      g_table[s] = clamp(slab.vertex(f(slab.index_of(lower->vertex(s)))));
    }
    DigitalMap g(lower, lower, std::move(g_table));
    const VertexId p = extend(v, k - 1, g);
    const VertexId p_up = slab.index_of(lower->vertex(p));
    const bool stays = slab.vertex(f(p_up))[last] < k;
    const VertexId result = stays ? p_up : slab.index_of(lower->vertex(g(p)));
    return verified(f, result, "product_afp");
  }

  ImagePtr base_image_;
  Coord n_;
  const AfpFinder& base_;
};

/// Vertex of the padded cube [0,n]^v mapped into prod [a_i,b_i].
Point clamp_into_box(const Point& p, std::size_t offset, const std::vector<Bounds>& bounds) {
  std::vector<Coord> c(p.coords().begin(), p.coords().end());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    c[offset + i] = std::min(c[offset + i], bounds[i].hi - bounds[i].lo) + bounds[i].lo;
  }
  return Point(std::move(c));
}

Point translate_to_origin(const Point& p, std::size_t offset, const std::vector<Bounds>& bounds) {
  std::vector<Coord> c(p.coords().begin(), p.coords().end());
  for (std::size_t i = 0; i < bounds.size(); ++i) c[offset + i] -= bounds[i].lo;
  return Point(std::move(c));
}

Coord longest_side(const std::vector<Bounds>& bounds) {
  Coord n = 0;
  for (const auto& b : bounds) n = std::max(n, b.hi - b.lo);
  return n;
}

/// F = inclusion o (f translated to the origin) o clamp, a self-map of `cube_image`.
std::vector<VertexId> pad_map(const DigitalMap& f, const DigitalImage& cube_image,
                              std::size_t offset, const std::vector<Bounds>& bounds) {
  std::vector<VertexId> table(cube_image.size());
  for (VertexId c = 0; c < table.size(); ++c) {
    const Point& image = f(clamp_into_box(cube_image.vertex(c), offset, bounds));
    table[c] = cube_image.index_of(translate_to_origin(image, offset, bounds));
  }
  return table;
}

}  // namespace

VertexId product_afp(const ImagePtr& base_image, std::size_t v, Coord n,
                     const DigitalMap& f, const AfpFinder& base) {
  if (n < 0) throw InvalidArgument("product_afp: side bound must be >= 0");
  if (!same_image(base.image(), base_image)) {
    throw InvalidArgument("product_afp: base finder is for a different image");
  }
  require_continuous_self_map(f, product_with_cube(base_image, v, n), "product_afp");
  return verified(f, CubeExtension(base_image, n, base).solve(v, f.table()), "product_afp");
}

VertexId product_box_afp(const ImagePtr& base_image, const std::vector<Bounds>& bounds,
                         const DigitalMap& f, const AfpFinder& base) {
  if (bounds.empty()) throw InvalidArgument("product_box_afp: no box factors");
  const int v = static_cast<int>(bounds.size());
  require_continuous_self_map(f, np_product(base_image, share(make_box(bounds, v))).image,
                              "product_box_afp");
  const Coord n = longest_side(bounds);
  const std::size_t offset = base_image->dimension();
  auto padded = product_with_cube(base_image, bounds.size(), n);
  DigitalMap big(padded, padded, pad_map(f, *padded, offset, bounds));
  const VertexId p = product_afp(base_image, bounds.size(), n, big, base);
  const VertexId q = f.domain().index_of(clamp_into_box(padded->vertex(p), offset, bounds));
  return verified(f, q, "product_box_afp");
}

Point box_afp(const std::vector<Bounds>& bounds, const DigitalMap& f) {
  if (bounds.empty()) throw InvalidArgument("box_afp: no bounds");
  const std::size_t v = bounds.size();
  require_continuous_self_map(f, share(make_box(bounds, static_cast<int>(v))), "box_afp");
  const Coord n = longest_side(bounds);
  // [0,n]^v under c_v, regrouped as [0,n] x [0,n]^(v-1) under NP(c_1, c_(v-1)).
  auto interval = share(make_box({Bounds{0, n}}, 1));
  auto regrouped = product_with_cube(interval, v - 1, n);
  DigitalMap big(regrouped, regrouped, pad_map(f, *regrouped, 0, bounds));
  const VertexId p = product_afp(interval, v - 1, n, big, IntervalAfpFinder(interval));
  const VertexId q = f.domain().index_of(clamp_into_box(regrouped->vertex(p), 0, bounds));
  return f.domain().vertex(verified(f, q, "box_afp"));
}

ProductAfpFinder::ProductAfpFinder(std::shared_ptr<const AfpFinder> base,
                                   std::vector<Bounds> bounds)
    : base_(std::move(base)), bounds_(std::move(bounds)) {
  if (!base_ || bounds_.empty()) throw InvalidArgument("product finder needs a base and a box");
  image_ = np_product(base_->image(),
                      share(make_box(bounds_, static_cast<int>(bounds_.size()))))
               .image;
}

VertexId ProductAfpFinder::find(const DigitalMap& f) const {
  return product_box_afp(base_->image(), bounds_, f, *base_);
}

BoxAfpFinder::BoxAfpFinder(std::vector<Bounds> bounds)
    : bounds_(std::move(bounds)),
      image_(share(make_box(bounds_, static_cast<int>(bounds_.size())))) {}

VertexId BoxAfpFinder::find(const DigitalMap& f) const {
  return image_->index_of(box_afp(bounds_, f));
}

}  // namespace digitop
