#pragma once

#include <memory>
#include <vector>

#include "digitop/image.hpp"
#include "digitop/map.hpp"

namespace digitop {

/// An image X' = X + {x0} with a retraction r: X' -> X such that
/// N*(X', x0) is contained in N*(X', r(x0)). Both conditions are checked on
/// construction. Under them, an approximate fixed point of r o f|X lifts to
/// one of f.
class BuilderInstance {
 public:
  BuilderInstance(ImagePtr extended, VertexId removed, DigitalMap retraction);

  /// The instance whose retraction sends `removed` to `target` and fixes
  /// every other vertex.
  static BuilderInstance collapse(const ImagePtr& extended, VertexId removed,
                                  VertexId target);

  const ImagePtr& extended() const { return extended_; }
  /// X = X' minus x0.
  const ImagePtr& base() const { return retraction_.codomain_ptr(); }
  VertexId removed() const { return removed_; }
  const DigitalMap& retraction() const { return retraction_; }

  /// Id in X' of a vertex of X.
  VertexId lift(VertexId base_vertex) const { return lift_[base_vertex]; }

  /// g = r o f|X as a self-map of X.
  DigitalMap reduce(const DigitalMap& f) const;

 private:
  ImagePtr extended_;
  VertexId removed_;
  DigitalMap retraction_;
  std::vector<VertexId> lift_;
};

/// Given an approximate fixed point y (id in X) of g = r o f|X, returns an
/// approximate fixed point of f (id in X'): y itself when f(y) != x0, else
/// g(y) = r(x0). Throws InvalidArgument when y is not an approximate fixed
/// point of g.
VertexId builder_step(const BuilderInstance& inst, const DigitalMap& f, VertexId y);

/// Produces one approximate fixed point of any continuous self-map of a
/// fixed image. Results are always verified before they are returned.
class AfpFinder {
 public:
  virtual ~AfpFinder() = default;
  virtual const ImagePtr& image() const = 0;
  virtual VertexId find(const DigitalMap& f) const = 0;
};

/// Peels leaves in pruning order, one builder step per leaf.
class TreeAfpFinder final : public AfpFinder {
 public:
  explicit TreeAfpFinder(TreeStructure tree);

  const ImagePtr& image() const override { return tree_.image; }
  VertexId find(const DigitalMap& f) const override;

 private:
  TreeStructure tree_;
  // steps_[i] removes pruning_order[i] from the image left by steps_[i-1].
  std::vector<BuilderInstance> steps_;
};

/// ([a,b], c_1): the first t in ascending order with |f(t) - t| <= 1.
class IntervalAfpFinder final : public AfpFinder {
 public:
  explicit IntervalAfpFinder(ImagePtr interval);

  const ImagePtr& image() const override { return image_; }
  VertexId find(const DigitalMap& f) const override;

 private:
  ImagePtr image_;
};

/// Least approximate fixed point by exhaustive scan; throws
/// NoApproximateFixedPoint when there is none.
class ScanAfpFinder final : public AfpFinder {
 public:
  explicit ScanAfpFinder(ImagePtr image) : image_(std::move(image)) {}

  const ImagePtr& image() const override { return image_; }
  VertexId find(const DigitalMap& f) const override;

 private:
  ImagePtr image_;
};

VertexId tree_afp(const TreeStructure& tree, const DigitalMap& f);

/// X x [0,n]^v under NP(kappa, c_v), the product image product_afp expects.
ImagePtr product_with_cube(const ImagePtr& base, std::size_t v, Coord n);

/// Approximate fixed point of a continuous self-map f of X x [0,n]^v under
/// NP(kappa, c_v), given a finder for X. Recurses on v by viewing the image
/// as (X x [0,n]^(v-1)) x [0,n], and within that on the interval length by
/// clamping the top slice onto the one below it. At v = 0 this is base.find.
VertexId product_afp(const ImagePtr& base_image, std::size_t v, Coord n,
                     const DigitalMap& f, const AfpFinder& base);

/// Approximate fixed point of a continuous self-map of X x prod[a_i,b_i]
/// under NP(kappa, c_v): translates the box to the origin, pads it to a cube
/// [0,n]^v through the clamping retraction, and runs product_afp.
VertexId product_box_afp(const ImagePtr& base_image, const std::vector<Bounds>& bounds,
                         const DigitalMap& f, const AfpFinder& base);

/// Approximate fixed point of a continuous self-map of prod[a_i,b_i] under
/// c_v, v = bounds.size(). The box is translated to the origin, padded to
/// [0,n]^v with n the longest side, viewed as [0,n] x [0,n]^(v-1), and
/// handed to product_afp with the interval finder as base.
Point box_afp(const std::vector<Bounds>& bounds, const DigitalMap& f);

class ProductAfpFinder final : public AfpFinder {
 public:
  ProductAfpFinder(std::shared_ptr<const AfpFinder> base, std::vector<Bounds> bounds);

  const ImagePtr& image() const override { return image_; }
  VertexId find(const DigitalMap& f) const override;

 private:
  std::shared_ptr<const AfpFinder> base_;
  std::vector<Bounds> bounds_;
  ImagePtr image_;
};

class BoxAfpFinder final : public AfpFinder {
 public:
  explicit BoxAfpFinder(std::vector<Bounds> bounds);

  const ImagePtr& image() const override { return image_; }
  VertexId find(const DigitalMap& f) const override;

 private:
  std::vector<Bounds> bounds_;
  ImagePtr image_;
};

}  // namespace digitop
