#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "digitop/error.hpp"
#include "digitop/image.hpp"
#include "oracles.hpp"

using namespace digitop;

TEST(CuAdjacent, DiagonalNeedsTwoCoordinates) {
  EXPECT_FALSE(cu_adjacent(Point{0, 0}, Point{1, 1}, 1));
  EXPECT_TRUE(cu_adjacent(Point{0, 0}, Point{1, 1}, 2));
}

TEST(CuAdjacent, Irreflexive) { EXPECT_FALSE(cu_adjacent(Point{0, 0, 0}, Point{0, 0, 0}, 3)); }

TEST(CuAdjacent, InteriorOfThreeByThreeUnderC2HasEightNeighbors) {
  auto img = fixtures::box({{-1, 1}, {-1, 1}}, 2);
  EXPECT_EQ(img->neighbors(img->index_of(Point{0, 0})).size(), 8u);
}

TEST(CuAdjacent, RejectsBadArguments) {
  EXPECT_THROW(cu_adjacent(Point{0}, Point{0, 1}, 1), InvalidArgument);
  EXPECT_THROW(cu_adjacent(Point{0, 0}, Point{0, 1}, 0), InvalidArgument);
  EXPECT_THROW(cu_adjacent(Point{0, 0}, Point{0, 1}, 3), InvalidArgument);
}

TEST(CuAdjacent, SymmetricIrreflexiveAndMatchesOracle) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int u = 1 + static_cast<int>(rng() % n);
    std::vector<Coord> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<Coord>(rng() % 5) - 2;
      b[i] = rng() % 3 == 0 ? a[i] : static_cast<Coord>(rng() % 5) - 2;
    }
    const Point x(a), y(b);
    ASSERT_EQ(cu_adjacent(x, y, u), cu_adjacent(y, x, u));
    ASSERT_FALSE(cu_adjacent(x, x, u));
    ASSERT_EQ(cu_adjacent(x, y, u), oracle::cu(x, y, u)) << x.str() << " " << y.str();
  }
}

TEST(CuAdjacent, FullUIsChebyshevDistanceOne) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Point> pts;
    std::vector<Coord> c(n, -2);
    for (;;) {
      pts.emplace_back(c);
      int i = 0;
      while (i < n && ++c[i] > 2) c[i++] = -2;
      if (i == n) break;
    }
    for (const auto& x : pts) {
      for (const auto& y : pts) {
        Coord cheb = 0;
        for (int i = 0; i < n; ++i) cheb = std::max<Coord>(cheb, std::llabs(x[i] - y[i]));
        ASSERT_EQ(cu_adjacent(x, y, n), cheb == 1);
      }
    }
  }
}

TEST(Image, RejectsMalformedInput) {
  EXPECT_THROW(DigitalImage({}, AdjacencyRule::cu(1)), InvalidArgument);
  EXPECT_THROW(DigitalImage({Point{0}, Point{0, 1}}, AdjacencyRule::cu(1)), InvalidArgument);
  EXPECT_THROW(DigitalImage({Point{0}}, AdjacencyRule::explicit_edges({{Point{0}, Point{1}}})),
               InvalidArgument);
  EXPECT_THROW(AdjacencyRule::explicit_edges({{Point{0}, Point{0}}}), InvalidArgument);
}

TEST(Image, VerticesSortedAndDeduplicated) {
  DigitalImage img({Point{2}, Point{0}, Point{1}, Point{0}}, AdjacencyRule::cu(1));
  ASSERT_EQ(img.size(), 3u);
  EXPECT_EQ(img.vertex(0), Point{0});
  EXPECT_EQ(img.vertex(2), Point{2});
}

TEST(Neighborhood, IntervalExamples) {
  auto img = fixtures::box({{0, 2}}, 1);
  EXPECT_EQ(neighborhood(*img, 1, false), (std::vector<VertexId>{0, 2}));
  EXPECT_EQ(neighborhood(*img, 0, true), (std::vector<VertexId>{0, 1}));
}

TEST(Neighborhood, CenterOfThreeByThreeClosedIsEverything) {
  auto img = fixtures::box({{-1, 1}, {-1, 1}}, 2);
  EXPECT_EQ(neighborhood(*img, img->index_of(Point{0, 0}), true).size(), 9u);
}

TEST(Neighborhood, ClosedIsOpenPlusCenter) {
  for (const auto& img : fixtures::corpus(6, 5, 20)) {
    for (VertexId x = 0; x < img->size(); ++x) {
      auto open = neighborhood(*img, x, false);
      std::set<VertexId> expected(open.begin(), open.end());
      expected.insert(x);
      auto closed = neighborhood(*img, x, true);
      ASSERT_EQ(std::set<VertexId>(closed.begin(), closed.end()), expected);
    }
  }
}

TEST(Neighborhood, RejectsMissingVertex) {
  auto img = fixtures::box({{0, 2}}, 1);
  EXPECT_THROW(neighborhood(*img, 7, true), InvalidArgument);
}

TEST(Connectivity, Examples) {
  EXPECT_TRUE(is_connected(*fixtures::box({{0, 3}}, 1)));
  EXPECT_FALSE(is_connected(DigitalImage({Point{0, 0}, Point{2, 2}}, AdjacencyRule::cu(1))));
  EXPECT_TRUE(is_connected(DigitalImage({Point{0, 0}, Point{1, 1}}, AdjacencyRule::cu(2))));
}

TEST(FindPath, Examples) {
  auto line = fixtures::box({{0, 3}}, 1);
  EXPECT_EQ(find_path(*line, 0, 3), (std::vector<VertexId>{0, 1, 2, 3}));
  EXPECT_EQ(find_path(*line, 2, 2), (std::vector<VertexId>{2}));

  auto block = fixtures::box({{-1, 1}, {-1, 1}}, 2);
  const auto a = block->index_of(Point{-1, -1});
  const auto b = block->index_of(Point{1, 1});
  const auto p = find_path(*block, a, b);
  ASSERT_TRUE(p);
  EXPECT_EQ(static_cast<int>(p->size()) - 1, oracle::distances(*block, a)[b]);
  EXPECT_EQ(block->vertex((*p)[1]), (Point{0, 0}));
}

TEST(FindPath, NoneAcrossComponents) {
  DigitalImage img({Point{0}, Point{5}}, AdjacencyRule::cu(1));
  EXPECT_FALSE(find_path(img, 0, 1));
}

TEST(FindPath, ShortestAndLexicographicallyLeast) {
  for (const auto& img : fixtures::corpus(6, 9, 20)) {
    const auto adj = oracle::relation(*img);
    for (VertexId a = 0; a < img->size(); ++a) {
      for (VertexId b = 0; b < img->size(); ++b) {
        const auto dist = oracle::distances(*img, b);
        const auto p = find_path(*img, a, b);
        if (dist[a] < 0) {
          ASSERT_FALSE(p);
          continue;
        }
        ASSERT_TRUE(p);
        ASSERT_EQ(static_cast<int>(p->size()) - 1, dist[a]);
        // Greedy least step toward b is the lexicographically least shortest path.
        VertexId cur = a;
        for (std::size_t i = 1; i < p->size(); ++i) {
          VertexId least = 0;
          while (!(adj[cur][least] && dist[least] == dist[cur] - 1)) ++least;
          ASSERT_EQ((*p)[i], least);
          cur = least;
        }
      }
    }
  }
}

TEST(Trees, Examples) {
  EXPECT_TRUE(is_tree(*fixtures::box({{0, 4}}, 1)));
  EXPECT_FALSE(is_tree(*fixtures::box({{0, 1}, {0, 1}}, 1)));
  EXPECT_TRUE(is_tree(*fixtures::star(4)));
}

TEST(Trees, CorpusCountsAreKnownTreeNumbers) {
  const std::size_t expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) {
    const auto trees = cli::nonisomorphic_trees(n);
    EXPECT_EQ(trees.size(), expected[n]) << n;
    for (const auto& t : trees) EXPECT_TRUE(is_tree(*fixtures::spec(t)));
  }
}

TEST(Trees, PathsAreTheUniqueSimplePaths) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& spec : cli::nonisomorphic_trees(n)) {
      auto img = fixtures::spec(spec);
      const auto adj = oracle::relation(*img);
      for (VertexId a = 0; a < img->size(); ++a) {
        for (VertexId b = 0; b < img->size(); ++b) {
          // Count simple paths a..b by depth-first search.
          std::vector<std::vector<VertexId>> found;
          std::vector<VertexId> stack{a};
          std::vector<bool> on(img->size(), false);
          on[a] = true;
          std::function<void()> dfs = [&] {
            if (stack.back() == b) {
              found.push_back(stack);
              return;
            }
            for (VertexId w = 0; w < img->size(); ++w) {
              if (adj[stack.back()][w] && !on[w]) {
                on[w] = true;
                stack.push_back(w);
                dfs();
                stack.pop_back();
                on[w] = false;
              }
            }
          };
          dfs();
          ASSERT_EQ(found.size(), 1u);
          ASSERT_EQ(find_path(*img, a, b), found.front());
        }
      }
    }
  }
}

TEST(TreeStructure, PathRootedAtEnd) {
  auto t = tree_structure(fixtures::path(3), 0);
  EXPECT_FALSE(t.parent[0]);
  EXPECT_EQ(t.parent[1], 0u);
  EXPECT_EQ(t.parent[2], 1u);
  EXPECT_EQ(t.leaves, (std::vector<VertexId>{2}));
}

TEST(TreeStructure, Singleton) {
  auto t = tree_structure(fixtures::box({{3, 3}}, 1), 0);
  EXPECT_FALSE(t.parent[0]);
  EXPECT_EQ(t.pruning_order, (std::vector<VertexId>{0}));
}

TEST(TreeStructure, StarRootedAtCenter) {
  auto t = tree_structure(fixtures::star(4), 0);
  for (VertexId leaf = 1; leaf < 4; ++leaf) EXPECT_EQ(t.parent[leaf], 0u);
  EXPECT_EQ(t.leaves, (std::vector<VertexId>{1, 2, 3}));
  EXPECT_EQ(t.pruning_order, (std::vector<VertexId>{1, 2, 3, 0}));
}

TEST(TreeStructure, Errors) {
  EXPECT_THROW(tree_structure(fixtures::box({{0, 1}, {0, 1}}, 1), 0), InvalidArgument);
  EXPECT_THROW(tree_structure(fixtures::path(3), 3), InvalidArgument);
}

TEST(TreeStructure, ParentsLieOnPathsAndPruningKeepsTrees) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& spec : cli::nonisomorphic_trees(n)) {
      auto img = fixtures::spec(spec);
      for (VertexId root = 0; root < img->size(); ++root) {
        const auto t = tree_structure(img, root);
        const auto dist = oracle::distances(*img, root);
        for (VertexId y = 0; y < img->size(); ++y) {
          if (y == root) continue;
          ASSERT_TRUE(t.parent[y]);
          ASSERT_TRUE(img->adjacent(y, *t.parent[y]));
          ASSERT_EQ(dist[*t.parent[y]], dist[y] - 1);
        }
        ASSERT_EQ(t.pruning_order.size(), img->size());
        ASSERT_EQ(t.pruning_order.back(), root);
        std::vector<VertexId> remaining(img->size());
        std::iota(remaining.begin(), remaining.end(), 0);
        for (std::size_t i = 0; i + 1 < t.pruning_order.size(); ++i) {
          std::erase(remaining, t.pruning_order[i]);
          ASSERT_TRUE(is_tree(img->sub_image(remaining)));
        }
      }
    }
  }
}

TEST(MakeBox, Examples) {
  auto square = fixtures::box({{0, 1}, {0, 1}}, 2);
  EXPECT_EQ(square->size(), 4u);
  EXPECT_EQ(square->edges().size(), 6u);
  EXPECT_EQ(fixtures::box({{5, 5}}, 1)->size(), 1u);
  auto block = fixtures::box({{-1, 1}, {-1, 1}}, 1);
  EXPECT_EQ(block->size(), 9u);
  EXPECT_EQ(block->edges().size(), 12u);
}

TEST(MakeBox, Errors) {
  EXPECT_THROW(make_box({{1, 0}}, 1), InvalidArgument);
  EXPECT_THROW(make_box({{0, 1}}, 2), InvalidArgument);
}

TEST(MakeBox, EdgesMatchOracle) {
  for (int u = 1; u <= 3; ++u) {
    auto img = fixtures::box({{0, 2}, {-1, 0}, {4, 5}}, u);
    std::size_t expected = 0;
    for (const auto& a : img->vertices()) {
      for (const auto& b : img->vertices()) expected += a < b && oracle::cu(a, b, u);
    }
    EXPECT_EQ(img->edges().size(), expected);
  }
}
