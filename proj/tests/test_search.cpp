#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "digitop/error.hpp"
#include "digitop/search.hpp"
#include "oracles.hpp"

using namespace digitop;

namespace {

void expect_sound(const AfppVerdict& v) {
  if (v.status == AfppStatus::holds) {
    EXPECT_TRUE(v.exhaustive);
    EXPECT_FALSE(v.witness);
  }
  if (v.status == AfppStatus::fails) {
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(is_continuous(*v.witness));
    EXPECT_TRUE(approximate_fixed_points(*v.witness).empty());
  }
}

}  // namespace

TEST(DecideAfpp, Examples) {
  const auto interval = decide_afpp(fixtures::box({{0, 2}}, 1));
  EXPECT_TRUE(interval.holds());

  auto sq = fixtures::box({{0, 1}, {0, 1}}, 1);
  const auto square = decide_afpp(sq);
  ASSERT_EQ(square.status, AfppStatus::fails);
  expect_sound(square);
  const auto antipodal = DigitalMap::from_pairs(
      sq, sq, {{Point{0, 0}, Point{1, 1}}, {Point{0, 1}, Point{1, 0}},
               {Point{1, 0}, Point{0, 1}}, {Point{1, 1}, Point{0, 0}}});
  EXPECT_TRUE(is_continuous(antipodal));
  EXPECT_TRUE(approximate_fixed_points(antipodal).empty());

  EXPECT_TRUE(decide_afpp(fixtures::box({{-1, 1}, {-1, 1}}, 2)).holds());
}

TEST(DecideAfpp, UnitSquareWitnessIsTheAntipodalMap) {
  // On the 4-cycle each vertex has exactly one non-AFP target, so the
  // antipodal map is the only witness.
  auto sq = fixtures::box({{0, 1}, {0, 1}}, 1);
  const auto v = decide_afpp(sq);
  ASSERT_TRUE(v.witness);
  std::vector<std::vector<VertexId>> witnesses;
  const auto adj = oracle::relation(*sq);
  oracle::for_each_continuous(*sq, [&](const auto& t) {
    if (!oracle::has_afp(adj, t)) witnesses.push_back(t);
  });
  ASSERT_EQ(witnesses.size(), 1u);
  EXPECT_EQ(v.witness->table(), witnesses.front());
  EXPECT_EQ(v.witness->table(), (std::vector<VertexId>{3, 2, 1, 0}));
}

TEST(DecideAfpp, TreesHold) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& spec : cli::nonisomorphic_trees(n)) {
      const auto v = decide_afpp(fixtures::spec(spec));
      EXPECT_TRUE(v.holds()) << spec.name;
      EXPECT_TRUE(v.exhaustive);
    }
  }
}

TEST(DecideAfpp, AgreesWithBruteForceOnCorpus) {
  std::size_t holds = 0, fails = 0;
  for (const auto& img : fixtures::corpus(7, 0x5eed, 60)) {
    const auto v = decide_afpp(img);
    expect_sound(v);
    ASSERT_NE(v.status, AfppStatus::undecided);
    ASSERT_EQ(v.holds(), oracle::afpp(*img)) << img->name() << " size " << img->size();
    (v.holds() ? holds : fails)++;
  }
  EXPECT_GT(holds, 10u);
  EXPECT_GT(fails, 10u);
}

TEST(DecideAfpp, UndecidedNeverClaimsHolds) {
  SearchBudget tiny{.max_vertices = 14, .max_nodes = 3, .seed = 0};
  const auto v = decide_afpp(fixtures::box({{0, 3}}, 1), tiny);
  EXPECT_EQ(v.status, AfppStatus::undecided);
  EXPECT_FALSE(v.exhaustive);
  EXPECT_FALSE(v.witness);

  SearchBudget small{.max_vertices = 4, .max_nodes = 100'000'000, .seed = 0};
  EXPECT_EQ(decide_afpp(fixtures::box({{0, 5}}, 1), small).status, AfppStatus::undecided);
}

TEST(DecideAfpp, IsomorphicImagesAgree) {
  // Translated, reflected, and coordinate-swapped copies of each box and
  // relabelled copies of each graph.
  std::mt19937_64 rng(41);
  for (const auto& img : fixtures::corpus(7, 43, 30)) {
    std::vector<Point> pts;
    if (img->rule().is_cu()) {
      for (const auto& p : img->vertices()) {
        std::vector<Coord> c(p.coords().rbegin(), p.coords().rend());
        for (auto& x : c) x = 5 - x;
        pts.emplace_back(c);
      }
      auto other = share(DigitalImage(pts, img->rule_ptr()));
      ASSERT_EQ(decide_afpp(img).holds(), decide_afpp(other).holds());
    } else {
      std::vector<Coord> label(img->size());
      std::iota(label.begin(), label.end(), -20);
      std::shuffle(label.begin(), label.end(), rng);
      for (auto l : label) pts.push_back(Point{l});
      std::vector<std::pair<Point, Point>> edges;
      for (const auto& [a, b] : img->edges()) edges.emplace_back(pts[a], pts[b]);
      auto other = share(DigitalImage(pts, AdjacencyRule::explicit_edges(edges)));
      ASSERT_EQ(decide_afpp(img).holds(), decide_afpp(other).holds());
    }
  }
}

TEST(DecideAfpp, RetractsOfAfppImagesHaveAfpp) {
  // Y = X minus one vertex x0 is a retract when some r(x0) makes r continuous.
  std::size_t pairs = 0;
  for (const auto& img : fixtures::corpus(7, 47, 30)) {
    if (img->size() < 2 || !decide_afpp(img).holds()) continue;
    for (VertexId x0 = 0; x0 < img->size(); ++x0) {
      std::vector<VertexId> rest;
      for (VertexId v = 0; v < img->size(); ++v) {
        if (v != x0) rest.push_back(v);
      }
      auto sub = share(img->sub_image(rest));
      for (VertexId target = 0; target < sub->size(); ++target) {
        std::vector<VertexId> table(img->size());
        for (VertexId v = 0; v < img->size(); ++v) {
          table[v] = v == x0 ? target : sub->index_of(img->vertex(v));
        }
        if (!is_retraction(DigitalMap(img, sub, table))) continue;
        ++pairs;
        ASSERT_TRUE(decide_afpp(sub).holds()) << img->name() << " minus " << x0;
        break;
      }
    }
  }
  EXPECT_GT(pairs, 50u);
}

TEST(DecideAfpp, PlanarImagesContainingUnitSquareFail) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts = {Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}};
    for (Coord x = -1; x <= 2; ++x) {
      for (Coord y = -1; y <= 1; ++y) {
        if (rng() % 3 == 0) pts.push_back(Point{x, y});
      }
    }
    auto img = share(DigitalImage(pts, AdjacencyRule::cu(1)));
    if (img->size() > 14) continue;
    const auto v = decide_afpp(img);
    ASSERT_EQ(v.status, AfppStatus::fails);
    expect_sound(v);
  }
}

TEST(DecideAfpp, FullBoxesHold) {
  for (const auto& shape : cli::box_shapes(14, 4)) {
    std::vector<Bounds> bounds;
    for (int s : shape) bounds.push_back({0, s - 1});
    const auto v = decide_afpp(fixtures::box(bounds, static_cast<int>(shape.size())));
    ASSERT_TRUE(v.holds());
  }
}

TEST(DecideAfpp, UnderFullBoxesFailIffMoreNontrivialSidesThanU) {
  // Boxes with at most u nontrivial sides are complete graphs under c_u, so
  // the unit-square failure needs more than u of them.
  for (const auto& shape : cli::box_shapes(12, 4)) {
    const int v = static_cast<int>(shape.size());
    int nontrivial = 0;
    std::vector<Bounds> bounds;
    for (int s : shape) {
      bounds.push_back({0, s - 1});
      nontrivial += s >= 2;
    }
    for (int u = 1; u < v; ++u) {
      const auto verdict = decide_afpp(fixtures::box(bounds, u));
      expect_sound(verdict);
      ASSERT_EQ(verdict.holds(), u >= nontrivial) << testing::PrintToString(shape) << " u=" << u;
    }
  }
  // The smallest such box: {0} x {0,1}^2 under c_2 is K4.
  auto k4 = fixtures::box({{0, 0}, {0, 1}, {0, 1}}, 2);
  EXPECT_EQ(k4->edges().size(), 6u);
  EXPECT_TRUE(oracle::afpp(*k4));
}

TEST(DecideAfpp, PrunesBelowEnumerationWhenSomeClosedNeighborhoodIsEverything) {
  std::vector<ImagePtr> images = {fixtures::box({{-1, 1}, {-1, 1}}, 2), fixtures::star(6),
                                  fixtures::complete(5), fixtures::box({{0, 2}}, 1)};
  for (const auto& img : images) {
    const auto v = decide_afpp(img);
    EXPECT_LT(v.nodes_explored, enumeration_nodes(img, {})) << img->name();
  }
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_continuous_self_maps(fixtures::box({{0, 1}}, 1), {}, nullptr), 4u);
  EXPECT_EQ(enumerate_continuous_self_maps(fixtures::path(3), {}, nullptr), 17u);
  EXPECT_EQ(enumerate_continuous_self_maps(fixtures::box({{0, 0}}, 1), {}, nullptr), 1u);
}

TEST(Enumerate, CountsMatchBruteForceAndOrderIsCanonical) {
  for (const auto& img : fixtures::corpus(6, 59, 20)) {
    std::vector<std::vector<VertexId>> seen;
    const auto count = enumerate_continuous_self_maps(img, {}, [&](const DigitalMap& f) {
      seen.push_back(f.table());
      return true;
    });
    ASSERT_EQ(count, oracle::continuous_count(*img));
    ASSERT_EQ(seen.size(), count);
    ASSERT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    ASSERT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
  }
}

TEST(Enumerate, VisitorCanStop) {
  int calls = 0;
  enumerate_continuous_self_maps(fixtures::path(3), {}, [&](const DigitalMap&) {
    return ++calls < 5;
  });
  EXPECT_EQ(calls, 5);
}

TEST(Enumerate, BudgetExceededThrows) {
  SearchBudget b{.max_vertices = 14, .max_nodes = 10, .seed = 0};
  EXPECT_THROW(enumerate_continuous_self_maps(fixtures::path(5), b, nullptr), BudgetExceeded);
  SearchBudget v{.max_vertices = 2, .max_nodes = 100, .seed = 0};
  EXPECT_THROW(enumerate_continuous_self_maps(fixtures::path(3), v, nullptr), BudgetExceeded);
}

TEST(Sampler, ContinuousAndDeterministic) {
  for (const auto& img : fixtures::corpus(9, 61, 20)) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto f = random_continuous_self_map(img, seed);
      ASSERT_TRUE(is_continuous(f));
      ASSERT_EQ(f, random_continuous_self_map(img, seed));
    }
  }
  auto single = fixtures::box({{4, 4}}, 1);
  EXPECT_EQ(random_continuous_self_map(single, 9), DigitalMap::identity(single));
}

TEST(Sampler, SeedsVary) {
  std::set<std::vector<VertexId>> distinct;
  for (std::uint64_t s = 0; s < 50; ++s) {
    distinct.insert(random_continuous_self_map(fixtures::box({{0, 4}}, 1), s).table());
  }
  EXPECT_GT(distinct.size(), 10u);
}
