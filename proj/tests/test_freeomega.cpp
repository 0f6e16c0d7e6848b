#include <doctest.h>

#include <random>
#include <set>

#include "dhat/freeomega.hpp"
#include "helpers.hpp"

using namespace dhat;

TEST_CASE("simplex atom rule matches the printed example") {
  auto [s, t] = simplex_atom_source_target({0, 4, 5, 8, 9});
  REQUIRE(s.size() == 3);
  REQUIRE(t.size() == 2);
  CHECK(s[0] == std::vector<int>{4, 5, 8, 9});
  CHECK(s[1] == std::vector<int>{0, 4, 8, 9});
  CHECK(s[2] == std::vector<int>{0, 4, 5, 8});
  CHECK(t[0] == std::vector<int>{0, 5, 8, 9});
  CHECK(t[1] == std::vector<int>{0, 4, 5, 9});
  CHECK_THROWS_AS(simplex_atom_source_target({3}), std::invalid_argument);
}

TEST_CASE("cube atom rule matches the printed example") {
  auto [s, t] = cube_atom_source_target("0+00");
  CHECK(s == std::vector<std::string>{"-+00", "0++0", "0+0-"});
  CHECK(t == std::vector<std::string>{"++00", "0+-0", "0+0+"});
  // 1-cells run from - to +
  auto [s1, t1] = cube_atom_source_target("0");
  CHECK(s1 == std::vector<std::string>{"-"});
  CHECK(t1 == std::vector<std::string>{"+"});
  CHECK_THROWS_AS(cube_atom_source_target("-+"), std::invalid_argument);
}

TEST_CASE("simplex 1-cells run from the larger vertex to the smaller") {
  auto [s, t] = simplex_atom_source_target({0, 1});
  CHECK(s == std::vector<std::vector<int>>{{1}});
  CHECK(t == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("free category on the triangle has exactly 8 cells") {
  GeneratorComplex g = GeneratorComplex::simplex(2);
  CellTable t = generate_cells(g, {16, 20000, false});
  REQUIRE(t.cell_count() == 8);
  CHECK(!t.truncated());
  std::set<std::string> keys;
  for (int i = 0; i < t.cell_count(); ++i) keys.insert(t.support_key(t.cell(i).support));
  std::set<std::string> expect{
      "(0)", "(1)", "(2)",
      "(0),(01),(1)", "(0),(02),(2)", "(1),(12),(2)",
      "(0),(01),(1),(12),(2)",                       // (12) *_0 (01)
      "(0),(01),(012),(02),(1),(12),(2)"};           // the triangle atom
  CHECK(keys == expect);
  // the lone composite is compose(R(12), R(01), 0)
  int e12 = t.cell_by_support(t.intern_support(
      {g.find("(1)"), g.find("(2)"), g.find("(12)")}));
  int e01 = t.cell_by_support(t.intern_support(
      {g.find("(0)"), g.find("(1)"), g.find("(01)")}));
  REQUIRE(e12 >= 0);
  REQUIRE(e01 >= 0);
  int c = compose(t, e12, e01, 0);
  CHECK(t.support_key(t.cell(c).support) == "(0),(01),(1),(12),(2)");
  CHECK(t.cell(c).dim == 1);
  // and it is the 1-source of the triangle
  int tri = t.cell_by_support(t.intern_support(std::vector<int>{
      g.find("(0)"), g.find("(1)"), g.find("(2)"), g.find("(01)"), g.find("(02)"),
      g.find("(12)"), g.find("(012)")}));
  CHECK(t.boundary_cell(tri, 1, Sign::minus) == c);
  // wrong-way composition is rejected
  CHECK_THROWS_AS(compose(t, e01, e12, 0), NonComposableError);
}

TEST_CASE("free category on the square has exactly 11 cells") {
  GeneratorComplex g = GeneratorComplex::cube(2);
  CellTable t = generate_cells(g, {16, 20000, false});
  REQUIRE(t.cell_count() == 11);
  std::set<std::string> keys;
  for (int i = 0; i < t.cell_count(); ++i) keys.insert(t.support_key(t.cell(i).support));
  std::set<std::string> expect{
      "--", "-+", "+-", "++",
      "-+,--,-0",                         // left edge atom
      "+-,++,+0",                         // right edge atom
      "+-,--,0-",                         // bottom edge atom
      "++,-+,0+",                         // top edge atom
      "++,-+,--,-0,0+",                   // upper path: -0 then 0+
      "+-,++,+0,--,0-",                   // lower path: 0- then +0
      "++,+-,+0,-+,--,-0,0+,0-,00"};      // the square atom
  CHECK(keys == expect);
  int sq = -1;
  for (int i = 0; i < t.cell_count(); ++i)
    if (t.cell(i).dim == 2) sq = i;
  REQUIRE(sq >= 0);
  // s_1 is the upper path, t_1 the lower one
  CHECK(t.support_key(t.boundary_support(sq, 1, Sign::minus)) == "++,-+,--,-0,0+");
  CHECK(t.support_key(t.boundary_support(sq, 1, Sign::plus)) == "+-,++,+0,--,0-");
  CHECK(t.support_key(t.boundary_support(sq, 0, Sign::minus)) == "--");
  CHECK(t.support_key(t.boundary_support(sq, 0, Sign::plus)) == "++");
}

TEST_CASE("axiom suite on triangle and square") {
  CHECK(testutil::check_axioms(generate_cells(GeneratorComplex::simplex(2),
                                              {16, 20000, false})) == "");
  CHECK(testutil::check_axioms(generate_cells(GeneratorComplex::cube(2),
                                              {16, 20000, false})) == "");
}

TEST_CASE("truncation limits") {
  GeneratorComplex g = GeneratorComplex::cube(2);
  CHECK_THROWS_AS(generate_cells(g, {16, 5, false}), TruncationError);
  CellTable t = generate_cells(g, {16, 9, true});
  CHECK(t.truncated());
  CHECK(t.cell_count() <= 9);
  // dimension cap alone also marks truncation
  CellTable d = generate_cells(GeneratorComplex::cube(2), {1, 20000, true});
  CHECK(d.truncated());
  for (int i = 0; i < d.cell_count(); ++i) CHECK(d.cell(i).dim <= 1);
}

TEST_CASE("glob and path_part invert each other") {
  for (auto make : {+[] { return generate_cells(GeneratorComplex::simplex(2),
                                                {16, 20000, false}); },
                    +[] { return generate_cells(GeneratorComplex::cube(2),
                                                {16, 20000, false}); }}) {
    CellTable t = make();
    CellTable gl = glob(t);
    CHECK(gl.cell_count() == t.cell_count() + 2);
    int zero_cells = 0;
    for (int i = 0; i < gl.cell_count(); ++i) zero_cells += gl.cell(i).dim == 0;
    CHECK(zero_cells == 2);  // just iota and sigma
    CHECK(is_noncontracting_check(gl));
    CellTable back = path_part(gl);
    CHECK(back.to_json() == t.to_json());
  }
}

TEST_CASE("noncontracting check") {
  CHECK(is_noncontracting_check(
      generate_cells(GeneratorComplex::simplex(2), {16, 20000, false})));
  // hand-built contracting counterexample: a 2-cell whose 1-source is a point
  GeneratorComplex g;
  int v = g.add_face("v", 0, {0}, {}, {});
  int z = g.add_face("z", 2, {v, 1}, {}, {});
  (void)z;
  CellTable t(&g);
  int sv = t.intern_support({v});
  t.add_cell({sv, 0, {}});
  int sz = t.intern_support({v, z});
  t.add_cell({sz, 2, {{sv, sv}, {sv, sv}}});
  CHECK(!is_noncontracting_check(t));
  CHECK_THROWS_AS(path_part(t), std::invalid_argument);
}

TEST_CASE("realize of the square matches the direct cube table") {
  PrecubicalSet k = standard_cube(2);
  Realization r = realize(k, {16, 20000, false});
  CHECK(r.table.cell_count() == 11);
  CHECK(testutil::check_axioms(r.table) == "");
}

TEST_CASE("realize counts directed paths as 1-cells") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    PrecubicalSet k = testutil::random_dag(rng, 12);
    Realization r = realize(k, {8, 200000, false});
    auto oracle = testutil::dag_paths(k);
    std::multiset<std::pair<std::string, std::string>> got;
    for (int i = 0; i < r.table.cell_count(); ++i) {
      if (r.table.cell(i).dim != 1) continue;
      auto nm = [&](Sign sg) {
        int c = r.table.boundary_cell(i, 0, sg);
        return r.table.face_name(r.table.support(r.table.cell(c).support).at(0));
      };
      got.emplace(nm(Sign::minus), nm(Sign::plus));
    }
    CHECK(got == oracle);
  }
}

TEST_CASE("realize rejects directed loops") {
  PrecubicalSet k;
  k.add_cube(0, "v");
  int e = k.add_cube(1, "e");
  k.set_face({1, e}, 1, Sign::minus, {0, 0});
  k.set_face({1, e}, 1, Sign::plus, {0, 0});
  CHECK_THROWS_AS(realize(k, {8, 1000, false}), CycleError);
  // allowed with truncation, flagged
  Realization r = realize(k, {8, 1000, true});
  CHECK(r.table.truncated());
}

TEST_CASE("realize glues shared faces") {
  // two squares sharing an edge: grid 2x1
  PrecubicalSet k = grid({2, 1});
  Realization r = realize(k, {8, 20000, false});
  int n0 = 0, n2 = 0;
  for (int i = 0; i < r.table.cell_count(); ++i) {
    if (r.table.cell(i).dim == 0) ++n0;
    if (r.table.cell(i).dim == 2) ++n2;
  }
  CHECK(n0 == 6);
  CHECK(n2 >= 3);  // two squares plus at least their horizontal pasting
  CHECK(testutil::check_axioms(r.table) == "");
}

TEST_CASE("cell table json is stable and hashes supports") {
  CellTable t = generate_cells(GeneratorComplex::simplex(2), {16, 20000, false});
  auto j1 = t.to_json();
  auto j2 = t.to_json();
  CHECK(j1 == j2);
  CHECK(j1.contains("cells"));
  CHECK(j1["cells"].size() == 8);
  for (const auto& c : j1["cells"]) CHECK(c["key"].get<std::string>().size() == 16);
}
