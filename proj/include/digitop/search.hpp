#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "digitop/image.hpp"
#include "digitop/map.hpp"

namespace digitop {

/// Hard ceiling on search size: domains are 64-bit vertex masks.
inline constexpr std::size_t kMaxSearchVertices = 64;

struct SearchBudget {
  std::size_t max_vertices = 14;
  std::uint64_t max_nodes = 100'000'000;
  std::uint64_t seed = 0;
};

enum class AfppStatus { holds, fails, undecided };

const char* to_string(AfppStatus status);

struct AfppVerdict {
  AfppStatus status = AfppStatus::undecided;
  /// Present iff status == fails: a continuous self-map with no
  /// approximate fixed point.
  std::optional<DigitalMap> witness;
  std::uint64_t nodes_explored = 0;
  /// Whether the search tree was exhausted (true for holds, and for fails
  /// only in the sense that the witness is the canonical first one).
  bool exhaustive = false;

  bool holds() const { return status == AfppStatus::holds; }
};

/// Decides whether every continuous self-map of `image` has an approximate
/// fixed point by searching directly for one that has none.
///
/// Vertices are assigned in canonical order. The candidates for f(x) start as
/// X \ N*(x); assigning f(x) = c restricts every unassigned neighbour of x to
/// N*(c). The first witness in this depth-first order is returned, so
/// verdicts are reproducible. A budget overrun yields `undecided`, never a
/// guess.
AfppVerdict decide_afpp(const ImagePtr& image, const SearchBudget& budget = {});

/// Receives each continuous self-map; return false to stop the enumeration.
using MapVisitor = std::function<bool(const DigitalMap&)>;

/// Visits every continuous self-map of `image` once, in lexicographic order
/// of tables, and returns how many were visited. Throws BudgetExceeded when
/// the image or the search tree outgrows the budget.
std::uint64_t enumerate_continuous_self_maps(const ImagePtr& image,
                                             const SearchBudget& budget,
                                             const MapVisitor& visit);

/// Number of search-tree nodes enumerate_continuous_self_maps would expand
/// for the full enumeration (for comparing search effort).
std::uint64_t enumeration_nodes(const ImagePtr& image, const SearchBudget& budget);

/// A continuous self-map chosen by randomized backtracking. The same
/// (image, seed) always produces the same table on every platform.
DigitalMap random_continuous_self_map(const ImagePtr& image, std::uint64_t seed);

}  // namespace digitop
