#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "cox/classify.hpp"
#include "cox/matrix.hpp"
#include "cox/reflection_rep.hpp"

namespace cox {

// Orthogonal part plus translation; composition applies the right factor first.
struct Isometry2 {
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
  Eigen::Vector2d t = Eigen::Vector2d::Zero();

  Eigen::Vector2d apply(const Eigen::Vector2d& x) const { return a * x + t; }
  Isometry2 compose(const Isometry2& other) const {
    return {a * other.a, a * other.t + t};
  }
  Isometry2 inverse() const {
    Eigen::Matrix2d ai = a.transpose();
    return {ai, -(ai * t)};
  }
  bool is_identity(double tol = kMatrixTol) const;
};

Isometry2 reflection_about_line(const Eigen::Vector2d& point,
                                const Eigen::Vector2d& direction);
Isometry2 make_translation(const Eigen::Vector2d&);

struct Lattice2 {
  Eigen::Matrix2d basis;  // columns span the lattice
};

// Tolerance-based dictionary of isometries; in torus mode translations are
// reduced into the fundamental cell first.
class IsoTable {
 public:
  explicit IsoTable(std::optional<Lattice2> lattice = std::nullopt);
  Isometry2 normalize(const Isometry2&) const;
  int insert(const Isometry2&);               // id of the (possibly existing) entry
  std::optional<int> find(const Isometry2&) const;
  const std::vector<Isometry2>& items() const { return items_; }

 private:
  std::optional<Eigen::Matrix2d> basis_, basis_inv_;
  ValuePool pool_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
  std::vector<Isometry2> items_;
};

struct FlatGroupBall {
  struct Element {
    Isometry2 iso;
    std::vector<int> word;  // letters over the alphabet
    int length = 0;
  };

  std::vector<Isometry2> input_generators;
  std::vector<Isometry2> alphabet;  // input plus appended inverses
  std::optional<Lattice2> lattice;
  int radius = 0;
  std::vector<Element> elements;  // BFS order, identity first
  IsoTable table;

  std::optional<int> find(const Isometry2& iso) const { return table.find(iso); }
};

// Word-length ball; the alphabet is the input list extended by the inverses of
// non-involutive generators. Aborts past the cap (non-discrete input suspected).
FlatGroupBall flat_group_ball(const std::vector<Isometry2>& generators,
                              int radius,
                              std::optional<Lattice2> lattice = std::nullopt,
                              std::size_t cap = 20000);

struct DirichletPolygon {
  Eigen::Vector2d base;
  std::vector<Eigen::Vector2d> vertices;      // counter-clockwise
  std::vector<std::optional<int>> edge_tags;  // edge i runs vertices[i] -> [i+1];
                                              // tag = ball element, none = working boundary
  bool bounded = false;                       // every edge carries a tag

  std::vector<int> tag_set() const;  // sorted unique tags
};

// Half-plane intersection over the orbit of x0, clipped to a working box.
// Accepted only if the edge-tag set is the same at radius-1 and radius.
DirichletPolygon dirichlet_domain(const FlatGroupBall&, const Eigen::Vector2d& x0,
                                  double working_halfwidth = 0);
// Same domain construction around the orbit point of the given ball element.
DirichletPolygon dirichlet_domain_at(const FlatGroupBall&,
                                     const Eigen::Vector2d& x0, int base_element,
                                     double working_halfwidth = 0);

DirichletPolygon transform_polygon(const Isometry2&, const DirichletPolygon&);
double hausdorff_distance(const std::vector<Eigen::Vector2d>&,
                          const std::vector<Eigen::Vector2d>&);

struct PoincareReport {
  std::vector<int> neighbors;  // ball elements tagging the domain edges
  std::vector<int> missing;    // target elements the neighbors failed to reach
  bool pass = false;
};

// Neighbors of the stabilized domain must regenerate every ball element of
// word length <= radius - 2.
PoincareReport poincare_neighbor_check(const FlatGroupBall&,
                                       const Eigen::Vector2d& x0);
// Closure of the given neighbor set, reported as missing target ids.
std::vector<int> poincare_regenerates(const FlatGroupBall&,
                                      const std::vector<int>& neighbors);

// ---- torus and plane reflection scenes ----

using Rat = boost::rational<long long>;

struct RatVec2 {
  Rat x, y;
  bool operator==(const RatVec2&) const = default;
};

// Lattice-coordinate isometry: integer orthogonal part, rational translation
// reduced mod 1. All scene arithmetic on these is exact.
struct TorusIsometry {
  std::array<std::array<long long, 2>, 2> b{{{1, 0}, {0, 1}}};
  RatVec2 u{0, 0};
  bool operator==(const TorusIsometry&) const = default;
};

// Fixed circle {x : a1 x1 + a2 x2 = c mod 1} with primitive sign-canonical (a1, a2).
struct MirrorCircle {
  long long a1 = 0, a2 = 0;
  Rat c{0};
  bool operator==(const MirrorCircle& o) const {
    return a1 == o.a1 && a2 == o.a2 && c == o.c;
  }
  bool operator<(const MirrorCircle& o) const {
    if (a1 != o.a1) return a1 < o.a1;
    if (a2 != o.a2) return a2 < o.a2;
    return c < o.c;
  }
};

struct Line2 {
  Eigen::Vector2d point, direction;
};

struct TorusScene {
  std::optional<Lattice2> lattice;  // disengaged for plane scenes

  // Torus mode: full group in lattice coordinates, identity first.
  std::vector<TorusIsometry> group;
  std::vector<std::vector<int>> words;
  std::vector<int> generator_elements;  // per input mirror: its element id
  std::vector<int> reflections;         // element ids with a nonempty fixed set
  std::vector<MirrorCircle> mirrors;
  std::vector<std::vector<int>> mirrors_of_reflection;

  struct Piece {
    std::vector<RatVec2> poly;  // counter-clockwise, exact
    int chamber = -1;
  };
  std::vector<Piece> pieces;
  int chamber_count = 0;

  struct Adjacency {
    int c1, c2;   // chambers on the two sides (may coincide)
    int mirror;   // index into mirrors
  };
  std::vector<Adjacency> adjacency;

  std::vector<std::vector<int>> action;  // [group element][chamber]
  bool action_free = false;
  bool action_transitive = false;

  // Plane mode only: input mirror lines and the working box half-width.
  std::vector<Line2> plane_mirrors;
  double box_halfwidth = 0;
};

// Mirrors must be rational with respect to the lattice; the reflection group
// they generate is closed exactly and the induced circle arrangement cuts the
// fundamental cell into chambers.
TorusScene torus_scene(const Lattice2&, const std::vector<Line2>& mirrors,
                       std::size_t max_group = 4096);

// Arrangement of the given lines inside a square working box; no group action.
TorusScene plane_scene(const std::vector<Line2>& mirrors, double halfwidth);

struct DissectReport {
  int components = 0;
  bool dissecting = false;  // exactly two components
};

// Deletes the adjacency edges crossing the reflection's fixed set and counts
// the components left. The index refers to scene.reflections in torus mode and
// to the input mirror list in plane mode.
DissectReport dissecting_check(const TorusScene&, int reflection_index);

struct RelationResult {
  bool identity = false;
  Isometry2 result;  // ambient form of the composed word
};

// Word letters index the input mirror list.
RelationResult relation_check(const TorusScene&, std::span<const int> word);
// Word letters index the input generators of the ball.
RelationResult relation_check(const FlatGroupBall&, std::span<const int> word);

// fig5-left, fig5-right, su3, su2.
TorusScene named_scene(const std::string& name);
std::vector<std::string> named_scene_list();

// ---- weight and root lattice bookkeeping for SU(n) ----

struct WeightLatticeData {
  int n = 0;     // SU(n)
  int rank = 0;  // n - 1
  std::vector<std::vector<long long>> cartan;
  // Bases in fundamental-weight coordinates, one vector per row.
  std::vector<std::vector<long long>> root_basis;
  std::vector<std::vector<long long>> anal_basis;
  std::vector<std::vector<long long>> alg_basis;
  long long anal_index = 0;  // [lattice of analytic integral forms : root lattice]
  long long alg_index = 0;   // [lattice of algebraically integral forms : root lattice]
  BigCount weyl_order = 0;
};

WeightLatticeData su_torus_data(int n);
long long integer_determinant(std::vector<std::vector<long long>> m);

std::string dirichlet_svg(const FlatGroupBall&, const Eigen::Vector2d& x0,
                          const DirichletPolygon&);
std::string torus_svg(const TorusScene&);

nlohmann::json polygon_to_json(const DirichletPolygon&);
nlohmann::json scene_report_json(const TorusScene&);
nlohmann::json lattice_data_to_json(const WeightLatticeData&);

}  // namespace cox
