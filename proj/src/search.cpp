#include "digitop/search.hpp"

#include <bit>
#include <random>

#include "digitop/error.hpp"

namespace digitop {
namespace {

using Mask = std::uint64_t;

/// Closed-neighbourhood masks plus, for each vertex, its neighbours that come
/// later in the canonical order (the ones forward checking prunes).
struct ConstraintGraph {
  std::size_t n = 0;
  Mask all = 0;
  std::vector<Mask> closed;
  std::vector<std::vector<VertexId>> later;

  explicit ConstraintGraph(const DigitalImage& image) : n(image.size()) {
    all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    closed.assign(n, 0);
    later.assign(n, {});
    for (VertexId v = 0; v < n; ++v) closed[v] |= Mask{1} << v;
    for (const auto& [a, b] : image.edges()) {
      closed[a] |= Mask{1} << b;
      closed[b] |= Mask{1} << a;
      later[a].push_back(b);
    }
  }
};

void check_size(const DigitalImage& image, const SearchBudget& budget) {
  if (budget.max_vertices > kMaxSearchVertices) {
    throw InvalidArgument("max_vertices may not exceed " +
                          std::to_string(kMaxSearchVertices));
  }
  if (image.size() > budget.max_vertices) {
    throw BudgetExceeded("image has " + std::to_string(image.size()) +
                         " vertices; budget allows " +
                         std::to_string(budget.max_vertices));
  }
}

/// Depth-first assignment with forward checking. `domains` holds one row of
/// n masks per depth; row d is the state before assigning vertex d.
class Backtracker {
 public:
  enum class Stop { exhausted, halted, budget };

  Backtracker(const ConstraintGraph& g, std::uint64_t max_nodes)
      : g_(g), max_nodes_(max_nodes), domains_((g.n + 1) * g.n), table_(g.n) {}

  std::vector<Mask>& domains() { return domains_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<VertexId>& table() const { return table_; }

  /// Calls `leaf` on each complete assignment; `leaf` returns false to halt.
  template <typename Leaf>
  Stop run(Leaf&& leaf) {
    for (std::size_t v = 0; v < g_.n; ++v) {
      if (domains_[v] == 0) return Stop::exhausted;
    }
    return descend(0, leaf);
  }

 private:
  template <typename Leaf>
  Stop descend(std::size_t depth, Leaf& leaf) {
    if (depth == g_.n) return leaf(table_) ? Stop::exhausted : Stop::halted;
    const Mask* row = &domains_[depth * g_.n];
    Mask* next = &domains_[(depth + 1) * g_.n];
    for (Mask candidates = row[depth]; candidates != 0; candidates &= candidates - 1) {
      if (++nodes_ > max_nodes_) return Stop::budget;
      const auto value = static_cast<VertexId>(std::countr_zero(candidates));
      std::copy(row, row + g_.n, next);
      bool wiped = false;
      for (VertexId w : g_.later[depth]) {
        next[w] &= g_.closed[value];
        if (next[w] == 0) {
          wiped = true;
          break;
        }
      }
      if (wiped) continue;
      table_[depth] = value;
      Stop s = descend(depth + 1, leaf);
      if (s != Stop::exhausted) return s;
    }
    return Stop::exhausted;
  }

  const ConstraintGraph& g_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<Mask> domains_;
  std::vector<VertexId> table_;
};

}  // namespace

const char* to_string(AfppStatus status) {
  switch (status) {
    case AfppStatus::holds: return "holds";
    case AfppStatus::fails: return "fails";
    case AfppStatus::undecided: return "undecided";
  }
  return "undecided";
}

AfppVerdict decide_afpp(const ImagePtr& image, const SearchBudget& budget) {
  AfppVerdict verdict;
  try {
    check_size(*image, budget);
  } catch (const BudgetExceeded&) {
    return verdict;
  }
  const ConstraintGraph g(*image);
  Backtracker bt(g, budget.max_nodes);
  for (std::size_t v = 0; v < g.n; ++v) bt.domains()[v] = g.all & ~g.closed[v];

  std::optional<std::vector<VertexId>> found;
  const auto stop = bt.run([&](const std::vector<VertexId>& table) {
    found = table;
    return false;
  });
  verdict.nodes_explored = bt.nodes();
  switch (stop) {
    case Backtracker::Stop::budget:
      verdict.status = AfppStatus::undecided;
      return verdict;
    case Backtracker::Stop::exhausted:
      verdict.status = AfppStatus::holds;
      verdict.exhaustive = true;
      return verdict;
    case Backtracker::Stop::halted:
      break;
  }
  DigitalMap witness(image, image, std::move(*found));
  if (!is_continuous(witness) || !approximate_fixed_points(witness).empty()) {
    throw CertificateFailure("decide_afpp produced an invalid witness");
  }
  verdict.status = AfppStatus::fails;
  verdict.witness = std::move(witness);
  verdict.exhaustive = true;
  return verdict;
}

namespace {

std::pair<std::uint64_t, std::uint64_t> run_enumeration(const ImagePtr& image,
                                                        const SearchBudget& budget,
                                                        const MapVisitor* visit) {
  check_size(*image, budget);
  const ConstraintGraph g(*image);
  Backtracker bt(g, budget.max_nodes);
  for (std::size_t v = 0; v < g.n; ++v) bt.domains()[v] = g.all;
  std::uint64_t count = 0;
  const auto stop = bt.run([&](const std::vector<VertexId>& table) {
    ++count;
    return visit == nullptr || (*visit)(DigitalMap(image, image, table));
  });
  if (stop == Backtracker::Stop::budget) {
    throw BudgetExceeded("enumeration exceeded " + std::to_string(budget.max_nodes) +
                         " search nodes");
  }
  return {count, bt.nodes()};
}

}  // namespace

std::uint64_t enumerate_continuous_self_maps(const ImagePtr& image,
                                             const SearchBudget& budget,
                                             const MapVisitor& visit) {
  return run_enumeration(image, budget, visit ? &visit : nullptr).first;
}

std::uint64_t enumeration_nodes(const ImagePtr& image, const SearchBudget& budget) {
  return run_enumeration(image, budget, nullptr).second;
}

DigitalMap random_continuous_self_map(const ImagePtr& image, std::uint64_t seed) {
  const std::size_t n = image->size();
  std::mt19937_64 rng(seed);
  // Plain modulo keeps draws identical across standard libraries, unlike
  // std::uniform_int_distribution.
  auto draw = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  if (n > kMaxSearchVertices) {
    return DigitalMap::constant(image, image, static_cast<VertexId>(draw(n)));
  }
  const ConstraintGraph g(*image);
  std::vector<Mask> domains((n + 1) * n, 0);
  for (std::size_t v = 0; v < n; ++v) domains[v] = g.all;
  std::vector<VertexId> table(n);
  std::uint64_t nodes = 0;
  constexpr std::uint64_t kNodeCap = 100'000;

  std::function<bool(std::size_t)> descend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const Mask* row = &domains[depth * n];
    Mask* next = &domains[(depth + 1) * n];
    std::vector<VertexId> candidates;
    for (Mask m = row[depth]; m != 0; m &= m - 1) {
      candidates.push_back(static_cast<VertexId>(std::countr_zero(m)));
    }
    for (std::size_t i = candidates.size(); i > 1; --i) {
      std::swap(candidates[i - 1], candidates[draw(i)]);
    }
    for (VertexId value : candidates) {
      if (++nodes > kNodeCap) return false;
      std::copy(row, row + n, next);
      bool wiped = false;
      for (VertexId w : g.later[depth]) {
        next[w] &= g.closed[value];
        wiped = wiped || next[w] == 0;
      }
      if (wiped) continue;
      table[depth] = value;
      if (descend(depth + 1)) return true;
      if (nodes > kNodeCap) return false;
    }
    return false;
  };
  if (descend(0)) return DigitalMap(image, image, std::move(table));
  return DigitalMap::constant(image, image, static_cast<VertexId>(draw(n)));
}

}  // namespace digitop
