#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "digitop/cli/spec.hpp"

namespace digitop::cli {

// Image families shared by the verify suite and the tests. All vertices are
// small integer points and all randomness is seeded.

/// 0 - 1 - ... - (n-1) as an explicit graph on one-dimensional points.
ImageSpec path_spec(int n);
/// Center 0 joined to leaves 1..n-1.
ImageSpec star_spec(int n);
ImageSpec box_spec(std::vector<Bounds> bounds, int u);

/// One representative of every isomorphism class of trees on n vertices,
/// as explicit graphs on 0..n-1 rooted at 0.
std::vector<ImageSpec> nonisomorphic_trees(int n);

/// Side-length vectors (each side >= 1 point) of all boxes with at most
/// `max_points` points in dimensions 1..max_dim.
std::vector<std::vector<int>> box_shapes(std::size_t max_points, std::size_t max_dim);

/// A random image on at most `max_vertices` vertices: either a subset of a
/// small grid under a random c_u, or a random explicit graph.
ImageSpec random_small_image(std::mt19937_64& rng, std::size_t max_vertices);

}  // namespace digitop::cli
