#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "cox/flat.hpp"

using namespace cox;

namespace {

const double kRoot3 = std::sqrt(3.0);

Isometry2 mirror_x_axis() {
  return reflection_about_line({0.0, 0.0}, {1.0, 0.0});
}

std::vector<Line2> triangle_333_mirrors() {
  return {
      {{0.0, 0.0}, {1.0, 0.0}},       // base
      {{0.0, 0.0}, {1.0, kRoot3}},    // 60 degrees through the origin
      {{1.0, 0.0}, {-1.0, kRoot3}},   // 120 degrees through (1,0)
  };
}

}  // namespace

TEST_CASE("isometry algebra") {
  Isometry2 r = mirror_x_axis();
  CHECK(r.a.determinant() == doctest::Approx(-1.0));
  CHECK((r.apply({2.0, 3.0}) - Eigen::Vector2d(2.0, -3.0)).norm() < 1e-12);
  CHECK(r.compose(r).is_identity());
  CHECK(!r.is_identity());

  // reflection fixes the line pointwise
  Isometry2 diag = reflection_about_line({1.0, 1.0}, {1.0, 1.0});
  CHECK((diag.apply({2.0, 2.0}) - Eigen::Vector2d(2.0, 2.0)).norm() < 1e-12);
  CHECK((diag.apply({1.0, 0.0}) - Eigen::Vector2d(0.0, 1.0)).norm() < 1e-12);

  // compose applies the right factor first
  Isometry2 t = make_translation({5.0, 0.0});
  Eigen::Vector2d x(0.0, 1.0);
  CHECK((r.compose(t).apply(x) - r.apply(t.apply(x))).norm() < 1e-12);
  CHECK((t.compose(r).apply(x) - t.apply(r.apply(x))).norm() < 1e-12);
  CHECK(r.compose(t).apply(x).y() == doctest::Approx(-1.0));

  CHECK(t.compose(t.inverse()).is_identity());
  CHECK(diag.inverse().compose(diag).is_identity());
}

TEST_CASE("iso table reduces translations modulo the lattice") {
  Lattice2 cell;
  cell.basis = Eigen::Matrix2d::Identity();
  IsoTable table{cell};
  int id_e = table.insert(Isometry2{});
  CHECK(table.insert(make_translation({1.0, 0.0})) == id_e);
  CHECK(table.insert(make_translation({-3.0, 7.0})) == id_e);
  int id_half = table.insert(make_translation({0.5, 0.0}));
  CHECK(id_half != id_e);
  CHECK(table.find(make_translation({2.5, 1.0})) == id_half);
  CHECK(!table.find(make_translation({0.25, 0.0})).has_value());
  CHECK(table.items().size() == 2);

  // plane mode keeps distinct translations distinct
  IsoTable plane;
  CHECK(plane.insert(Isometry2{}) !=
        plane.insert(make_translation({1.0, 0.0})));
}

TEST_CASE("group balls of finite and infinite reflection groups") {
  // radius zero: just the identity
  FlatGroupBall trivial = flat_group_ball({mirror_x_axis()}, 0);
  REQUIRE(trivial.elements.size() == 1);
  CHECK(trivial.elements[0].iso.is_identity());
  CHECK(trivial.elements[0].word.empty());

  // two parallel mirrors x=0 and x=1: infinite dihedral, two new elements
  // per length
  std::vector<Isometry2> walls{
      reflection_about_line({0.0, 0.0}, {0.0, 1.0}),
      reflection_about_line({1.0, 0.0}, {0.0, 1.0})};
  FlatGroupBall strip = flat_group_ball(walls, 2);
  CHECK(strip.elements.size() == 5);  // e, s0, s1, s0s1, s1s0
  CHECK(strip.alphabet.size() == 2);  // involutions get no extra inverses
  for (const auto& e : strip.elements)
    CHECK(e.length == static_cast<int>(e.word.size()));

  // 60 degree wedge: the hexagonal dihedral group, order 6, closed ball
  std::vector<Isometry2> wedge{
      mirror_x_axis(),
      reflection_about_line({0.0, 0.0}, {std::cos(M_PI / 3), std::sin(M_PI / 3)})};
  FlatGroupBall hex = flat_group_ball(wedge, 8);
  CHECK(hex.elements.size() == 6);

  // non-involutive generator brings its inverse into the alphabet
  Isometry2 shift = make_translation({1.0, 0.0});
  FlatGroupBall line = flat_group_ball({shift}, 3);
  CHECK(line.alphabet.size() == 2);
  CHECK(line.elements.size() == 7);  // translations by -3..3
  REQUIRE(line.find(make_translation({-2.0, 0.0})).has_value());
  CHECK(!line.find(make_translation({9.0, 0.0})).has_value());

  // ball explosion past the cap reads as suspected non-discreteness
  Isometry2 rot;  // rotation by one radian about the origin
  rot.a << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
  CHECK_THROWS_AS(flat_group_ball({rot}, 400, std::nullopt, 300),
                  ComputationError);
}

TEST_CASE("dirichlet domain of parallel mirrors is the strip between them") {
  std::vector<Isometry2> walls{
      reflection_about_line({0.0, 0.0}, {0.0, 1.0}),
      reflection_about_line({1.0, 0.0}, {0.0, 1.0})};
  FlatGroupBall ball = flat_group_ball(walls, 6);
  DirichletPolygon d = dirichlet_domain(ball, {0.3, 0.0});
  CHECK(!d.bounded);  // strip is cut by the working box
  auto tags = d.tag_set();
  REQUIRE(tags.size() == 2);
  // the tagged elements are exactly the two input reflections
  for (int tag : tags) {
    const Isometry2& g = ball.elements[tag].iso;
    CHECK(g.compose(g).is_identity());
    CHECK(g.a.determinant() == doctest::Approx(-1.0));
  }
  for (const auto& v : d.vertices) {
    CHECK(v.x() > -1e-9);
    CHECK(v.x() < 1.0 + 1e-9);
  }

  // base point on a mirror is rejected as irregular
  CHECK_THROWS_AS(dirichlet_domain(ball, {0.0, 0.2}), ValidationError);
}

TEST_CASE("dirichlet domain of a reflection group is its chamber") {
  FlatGroupBall ball = flat_group_ball(
      {reflection_about_line(triangle_333_mirrors()[0].point,
                             triangle_333_mirrors()[0].direction),
       reflection_about_line(triangle_333_mirrors()[1].point,
                             triangle_333_mirrors()[1].direction),
       reflection_about_line(triangle_333_mirrors()[2].point,
                             triangle_333_mirrors()[2].direction)},
      6);
  Eigen::Vector2d x0(0.29, 0.23);
  DirichletPolygon d = dirichlet_domain(ball, x0);
  CHECK(d.bounded);
  REQUIRE(d.vertices.size() == 3);
  CHECK(d.tag_set().size() == 3);

  std::vector<Eigen::Vector2d> expected{
      {0.0, 0.0}, {1.0, 0.0}, {0.5, kRoot3 / 2}};
  CHECK(hausdorff_distance(d.vertices, expected) < 1e-7);

  // every edge tag is a reflection fixing that edge
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    REQUIRE(d.edge_tags[i].has_value());
    const Isometry2& g = ball.elements[*d.edge_tags[i]].iso;
    Eigen::Vector2d mid =
        (d.vertices[i] + d.vertices[(i + 1) % d.vertices.size()]) / 2;
    CHECK((g.apply(mid) - mid).norm() < 1e-9);
  }
}

TEST_CASE("dirichlet domains are equivariant") {
  auto lines = triangle_333_mirrors();
  std::vector<Isometry2> gens;
  for (const auto& ln : lines)
    gens.push_back(reflection_about_line(ln.point, ln.direction));
  FlatGroupBall ball = flat_group_ball(gens, 7);
  Eigen::Vector2d x0(0.29, 0.23);
  DirichletPolygon d = dirichlet_domain(ball, x0);

  int checked = 0;
  for (int id = 0; id < static_cast<int>(ball.elements.size()); ++id) {
    if (ball.elements[id].length > 2) continue;
    DirichletPolygon moved = transform_polygon(ball.elements[id].iso, d);
    DirichletPolygon direct = dirichlet_domain_at(ball, x0, id);
    CHECK(hausdorff_distance(moved.vertices, direct.vertices) < 1e-7);
    ++checked;
  }
  CHECK(checked >= 7);
}

TEST_CASE("hausdorff distance on shifted squares") {
  std::vector<Eigen::Vector2d> unit{
      {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  std::vector<Eigen::Vector2d> moved{
      {0.5, 0.0}, {1.5, 0.0}, {1.5, 1.0}, {0.5, 1.0}};
  CHECK(hausdorff_distance(unit, unit) == doctest::Approx(0.0));
  CHECK(hausdorff_distance(unit, moved) == doctest::Approx(0.5));
  // rotation of the vertex list does not matter
  std::vector<Eigen::Vector2d> rotated{
      {1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0}};
  CHECK(hausdorff_distance(unit, rotated) == doctest::Approx(0.0));
}

TEST_CASE("poincare neighbor closure") {
  std::vector<Isometry2> walls{
      reflection_about_line({0.0, 0.0}, {0.0, 1.0}),
      reflection_about_line({1.0, 0.0}, {0.0, 1.0})};
  FlatGroupBall ball = flat_group_ball(walls, 6);
  PoincareReport r = poincare_neighbor_check(ball, {0.3, 0.0});
  CHECK(r.pass);
  CHECK(r.missing.empty());
  REQUIRE(r.neighbors.size() == 2);

  // an empty neighbor set regenerates nothing
  std::vector<int> missing = poincare_regenerates(ball, {});
  CHECK(!missing.empty());

  // dropping one neighbor loses half the line
  std::vector<int> one{r.neighbors[0]};
  CHECK(!poincare_regenerates(ball, one).empty());
}

TEST_CASE("relation words compose in the ambient plane") {
  std::vector<Isometry2> walls{
      reflection_about_line({0.0, 0.0}, {0.0, 1.0}),
      reflection_about_line({1.0, 0.0}, {0.0, 1.0})};
  FlatGroupBall ball = flat_group_ball(walls, 3);
  const std::vector<int> braid{0, 1, 0, 1};
  RelationResult r = relation_check(ball, braid);
  CHECK(!r.identity);  // (s0 s1)^2 is a translation by distance 4
  CHECK((r.result.a - Eigen::Matrix2d::Identity()).norm() < 1e-9);
  CHECK(r.result.t.norm() == doctest::Approx(4.0));

  const std::vector<int> square{0, 0};
  CHECK(relation_check(ball, square).identity);
}

TEST_CASE("named torus scenes expose the catalogued phenomena") {
  auto names = named_scene_list();
  CHECK(names == std::vector<std::string>{"fig5-left", "fig5-right", "su3",
                                          "su2"});
  CHECK_THROWS_AS(named_scene("nonsense"), ValidationError);

  SUBCASE("fig5-left: four distinct commuting wall pairs") {
    TorusScene s = named_scene("fig5-left");
    CHECK(s.group.size() == 16);
    CHECK(s.chamber_count == 16);
    CHECK(s.action_free);
    CHECK(s.action_transitive);
    REQUIRE(s.generator_elements.size() == 4);
    std::set<int> distinct(s.generator_elements.begin(),
                           s.generator_elements.end());
    CHECK(distinct.size() == 4);
    CHECK(s.reflections.size() == 4);
    for (const auto& circles : s.mirrors_of_reflection)
      CHECK(circles.size() == 2);
    for (std::size_t i = 0; i < s.reflections.size(); ++i)
      CHECK(dissecting_check(s, static_cast<int>(i)).dissecting);
    const std::vector<int> r13{0, 2, 0, 2};
    CHECK(relation_check(s, r13).identity);
    const std::vector<int> r24{1, 3, 1, 3};
    CHECK(relation_check(s, r24).identity);
  }

  SUBCASE("fig5-right: finer lattice collapses opposite walls") {
    TorusScene s = named_scene("fig5-right");
    CHECK(s.group.size() == 4);
    CHECK(s.chamber_count == 4);
    REQUIRE(s.generator_elements.size() == 4);
    CHECK(s.generator_elements[0] == s.generator_elements[2]);
    CHECK(s.generator_elements[1] == s.generator_elements[3]);
    CHECK(s.generator_elements[0] != s.generator_elements[1]);
  }

  SUBCASE("su3: free transitive action with non-dissecting walls") {
    TorusScene s = named_scene("su3");
    CHECK(s.group.size() == 6);
    CHECK(s.chamber_count == 6);
    CHECK(s.action_free);
    CHECK(s.action_transitive);
    CHECK(s.reflections.size() == 3);
    for (const auto& circles : s.mirrors_of_reflection)
      CHECK(circles.size() == 1);
    for (std::size_t i = 0; i < s.reflections.size(); ++i) {
      DissectReport d = dissecting_check(s, static_cast<int>(i));
      CHECK(!d.dissecting);
      CHECK(d.components == 1);
    }
  }

  SUBCASE("su2: rank one squared keeps dissecting walls") {
    TorusScene s = named_scene("su2");
    CHECK(s.group.size() == 4);
    CHECK(s.chamber_count == 4);
    CHECK(s.reflections.size() == 2);
    for (const auto& circles : s.mirrors_of_reflection)
      CHECK(circles.size() == 2);
    for (std::size_t i = 0; i < s.reflections.size(); ++i)
      CHECK(dissecting_check(s, static_cast<int>(i)).dissecting);
  }
}

TEST_CASE("torus scene consistency invariants") {
  TorusScene s = named_scene("fig5-left");
  // chambers tile the unit cell: piece polygons carry valid chamber ids
  std::set<int> chambers;
  for (const auto& p : s.pieces) {
    CHECK(p.chamber >= 0);
    CHECK(p.chamber < s.chamber_count);
    chambers.insert(p.chamber);
  }
  CHECK(static_cast<int>(chambers.size()) == s.chamber_count);

  // the action rows are permutations, identity row first
  REQUIRE(s.action.size() == s.group.size());
  for (const auto& row : s.action) {
    std::set<int> image(row.begin(), row.end());
    CHECK(static_cast<int>(image.size()) == s.chamber_count);
  }
  for (int c = 0; c < s.chamber_count; ++c) CHECK(s.action[0][c] == c);

  // adjacency references valid chambers and mirrors
  for (const auto& adj : s.adjacency) {
    CHECK(adj.c1 >= 0);
    CHECK(adj.c1 < s.chamber_count);
    CHECK(adj.c2 >= 0);
    CHECK(adj.c2 < s.chamber_count);
    CHECK(adj.mirror >= 0);
    CHECK(adj.mirror < static_cast<int>(s.mirrors.size()));
  }

  // group elements are closed under composition with the generators
  CHECK(s.words[0].empty());
}

TEST_CASE("torus scene rejects mirrors irrational for the lattice") {
  Lattice2 cell;
  cell.basis = Eigen::Matrix2d::Identity();
  std::vector<Line2> bad{{{0.0, 0.0}, {1.0, std::sqrt(2.0)}}};
  CHECK_THROWS_AS(torus_scene(cell, bad), ValidationError);
}

TEST_CASE("plane scenes count chambers inside the working box") {
  std::vector<Line2> one{{{0.0, 0.0}, {1.0, 0.0}}};
  TorusScene s = plane_scene(one, 2.0);
  CHECK(!s.lattice.has_value());
  CHECK(s.chamber_count == 2);
  DissectReport d = dissecting_check(s, 0);
  CHECK(d.components == 2);
  CHECK(d.dissecting);

  std::vector<Line2> axes{{{0.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}};
  TorusScene quad = plane_scene(axes, 2.0);
  CHECK(quad.chamber_count == 4);
  // each axis cuts the box into two parts
  CHECK(dissecting_check(quad, 0).dissecting);
  CHECK(dissecting_check(quad, 1).dissecting);
}

TEST_CASE("su weight lattice data") {
  CHECK_THROWS_AS(su_torus_data(1), ValidationError);
  CHECK_THROWS_AS(su_torus_data(99), ValidationError);

  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    WeightLatticeData d = su_torus_data(n);
    CHECK(d.rank == n - 1);
    CHECK(d.alg_index == n);
    CHECK(d.anal_index == n);
    CHECK(integer_determinant(d.cartan) == n);
    // Cartan matrix of A_{n-1}: 2 on the diagonal, -1 on the off-diagonals
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) {
        long long want = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
        CHECK(d.cartan[i][j] == want);
      }
    // Weyl group is the symmetric group on n letters
    BigCount fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<BigCount>(k);
    CHECK(d.weyl_order == fact);
    CHECK(d.root_basis == d.cartan);
  }
}

TEST_CASE("integer determinant") {
  CHECK(integer_determinant({{1}}) == 1);
  CHECK(integer_determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(integer_determinant({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}) == 4);
  CHECK(integer_determinant({{1, 2}, {2, 4}}) == 0);
  CHECK(integer_determinant({{3, 1, 4}, {1, 5, 9}, {2, 6, 5}}) == -90);
}

TEST_CASE("report serializers produce well-formed documents") {
  TorusScene s = named_scene("su3");
  nlohmann::json j = scene_report_json(s);
  CHECK(j["group_order"] == 6);
  CHECK(j["chambers"] == 6);
  CHECK(j["action_free"] == true);

  std::string svg = torus_svg(s);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  std::vector<Isometry2> walls{
      reflection_about_line({0.0, 0.0}, {0.0, 1.0}),
      reflection_about_line({1.0, 0.0}, {0.0, 1.0})};
  FlatGroupBall ball = flat_group_ball(walls, 5);
  DirichletPolygon d = dirichlet_domain(ball, {0.3, 0.0});
  nlohmann::json pj = polygon_to_json(d);
  CHECK(pj.contains("vertices"));
  CHECK(pj["bounded"] == false);
  CHECK(dirichlet_svg(ball, {0.3, 0.0}, d).find("<svg") != std::string::npos);

  nlohmann::json lj = lattice_data_to_json(su_torus_data(3));
  CHECK(lj["n"] == 3);
  CHECK(lj["algebraic_index"] == 3);
}
