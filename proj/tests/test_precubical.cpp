#include <doctest.h>

#include <random>

#include "dhat/precubical.hpp"

using namespace dhat;

namespace {
long binom(int n, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
}  // namespace

TEST_CASE("standard cube counts are C(n,p) 2^(n-p)") {
  for (int n = 0; n <= 4; ++n) {
    PrecubicalSet k = standard_cube(n);
    CHECK(k.validate().empty());
    for (int p = 0; p <= n; ++p)
      CHECK(k.size(p) == binom(n, p) * (1L << (n - p)));
  }
}

TEST_CASE("standard cube face words") {
  PrecubicalSet k = standard_cube(2);
  CubeId sq = *k.find(2, "00");
  CHECK(k.name(k.face(sq, 1, Sign::minus)) == "-0");
  CHECK(k.name(k.face(sq, 1, Sign::plus)) == "+0");
  CHECK(k.name(k.face(sq, 2, Sign::minus)) == "0-");
  CHECK(k.name(k.face(sq, 2, Sign::plus)) == "0+");
  // d_1^- d_2^- = d_1^- d_1^- on the square: both give "--"
  CHECK(k.name(k.face(k.face(sq, 2, Sign::minus), 1, Sign::minus)) == "--");
}

TEST_CASE("validate flags a rewired face deterministically") {
  PrecubicalSet k = standard_cube(2);
  CubeId sq = *k.find(2, "00");
  k.set_face(sq, 1, Sign::minus, *k.find(1, "0-"));  // wrong edge, right dim
  auto v = k.validate();
  REQUIRE(!v.empty());
  for (const auto& f : v) CHECK(f.kind == FaceViolation::Kind::axiom);
  CHECK(v.front().cube == sq);
  CHECK(v.front().i == 1);
  CHECK(v.front().j == 2);
  // deterministic: two runs agree
  auto v2 = k.validate();
  REQUIRE(v.size() == v2.size());
  for (size_t i = 0; i < v.size(); ++i)
    CHECK(v[i].describe() == v2[i].describe());
}

TEST_CASE("validate flags dangling faces") {
  PrecubicalSet k;
  k.add_cube(0, "v");
  k.add_cube(1, "e");  // faces never set
  auto v = k.validate();
  REQUIRE(v.size() == 2);
  CHECK(v[0].kind == FaceViolation::Kind::dangling);
}

TEST_CASE("grid counts and holes") {
  // 2x3 grid: 12 vertices, 17 edges, 6 squares
  PrecubicalSet g = grid({2, 3});
  CHECK(g.size(0) == 12);
  CHECK(g.size(1) == 17);
  CHECK(g.size(2) == 6);
  CHECK(g.validate().empty());

  // interior hole keeps all faces (they bound surviving squares)
  PrecubicalSet h = grid({2, 3}, {{1, 1}});
  CHECK(h.size(2) == 5);
  CHECK(h.size(1) == 17);
  CHECK(h.size(0) == 12);
  CHECK(h.validate().empty());

  // removing the only square exposes its interior faces
  PrecubicalSet sq = grid({1, 1}, {{0, 0}});
  CHECK(sq.size(2) == 0);
  CHECK(sq.size(1) == 4);
  CHECK(sq.size(0) == 4);
}

TEST_CASE("random 3d grids agree with a direct closure oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> len{1 + static_cast<int>(rng() % 2),
                         1 + static_cast<int>(rng() % 2),
                         1 + static_cast<int>(rng() % 2)};
    std::set<std::vector<int>> holes;
    int nh = static_cast<int>(rng() % 3);
    for (int i = 0; i < nh; ++i)
      holes.insert({static_cast<int>(rng() % len[0]), static_cast<int>(rng() % len[1]),
                    static_cast<int>(rng() % len[2])});
    PrecubicalSet g = grid(len, holes);
    CHECK(g.validate().empty());
    // oracle: mark every iterated face of surviving top cubes by coordinates
    std::set<std::string> kept;
    for (int x = 0; x < len[0]; ++x)
      for (int y = 0; y < len[1]; ++y)
        for (int z = 0; z < len[2]; ++z) {
          if (holes.count({x, y, z})) continue;
          std::vector<int> top{x, y, z};
          // all 27 sub-cubes: each axis interval, low point, or high point
          for (int m = 0; m < 27; ++m) {
            std::vector<int> comps(3);
            std::vector<bool> inter(3);
            int mm = m;
            for (int a = 0; a < 3; ++a, mm /= 3) {
              int c = mm % 3;
              inter[a] = c == 0;
              comps[a] = top[a] + (c == 2 ? 1 : 0);
            }
            kept.insert(grid_cube_name(comps, inter));
          }
        }
    int total = 0;
    for (int d = 0; d <= g.top_dim(); ++d) total += g.size(d);
    CHECK(total == static_cast<int>(kept.size()));
    for (int d = 0; d <= g.top_dim(); ++d)
      for (int i = 0; i < g.size(d); ++i) CHECK(kept.count(g.name({d, i})) == 1);
  }
}

TEST_CASE("subdivide_edge splits free edges only") {
  PrecubicalSet k = standard_cube(1);
  PrecubicalSet s = subdivide_edge(k, *k.find(1, "0"));
  CHECK(s.size(0) == 3);
  CHECK(s.size(1) == 2);
  CHECK(s.validate().empty());
  CHECK(s.find(0, "0#m").has_value());

  PrecubicalSet sq = standard_cube(2);
  CHECK(free_edges(sq).empty());
  CHECK_THROWS_AS(subdivide_edge(sq, *sq.find(1, "0-")), std::invalid_argument);
  CHECK_THROWS_AS(subdivide_edge(sq, CubeId{0, 0}), std::invalid_argument);

  // free edges of a square with a pendant edge
  PrecubicalSet p = standard_cube(2);
  int w = p.add_cube(0, "w");
  int e = p.add_cube(1, "pendant");
  p.set_face({1, e}, 1, Sign::minus, *p.find(0, "++"));
  p.set_face({1, e}, 1, Sign::plus, {0, w});
  auto fe = free_edges(p);
  REQUIRE(fe.size() == 1);
  CHECK(p.name(fe[0]) == "pendant");
  PrecubicalSet ps = subdivide_edge(p, fe[0]);
  CHECK(ps.validate().empty());
  CHECK(ps.size(1) == 6);
  CHECK(ps.size(2) == 1);
}

TEST_CASE("json round trip") {
  PrecubicalSet k = standard_cube(2);
  auto j = k.to_json();
  PrecubicalSet k2 = PrecubicalSet::from_json(j);
  CHECK(k2.to_json() == j);
  CHECK(k2.validate().empty());

  CHECK_THROWS_AS(PrecubicalSet::from_json(nlohmann::json{{"dims", 1}}),
                  std::invalid_argument);
  auto bad = j;
  bad["faces"][0]["target"] = "nonexistent";
  CHECK_THROWS_AS(PrecubicalSet::from_json(bad), std::invalid_argument);
}

TEST_CASE("duplicate names rejected") {
  PrecubicalSet k;
  k.add_cube(0, "v");
  CHECK_THROWS_AS(k.add_cube(0, "v"), std::invalid_argument);
  k.add_cube(1, "v");  // same name at another dimension is fine internally
  CHECK_THROWS_AS(k.to_json(), std::runtime_error);  // but not exportable
}
