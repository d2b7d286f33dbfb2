#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <json.hpp>

#include "cox/matrix.hpp"

using namespace cox;

TEST_CASE("parse and serialize round-trip") {
  CoxeterMatrix m = CoxeterMatrix::parse("1 3 2; 3 1 0; 2 0 1");
  CHECK(m.rank() == 3);
  CHECK(m.at(0, 1) == BondOrder{3});
  CHECK(m.at(1, 2) == infinite_bond);
  CHECK(m.at(2, 0) == BondOrder{2});
  CHECK(CoxeterMatrix::parse(m.serialize()) == m);

  // newline row separators and commas both work
  CHECK(CoxeterMatrix::parse("1 3\n3 1") == CoxeterMatrix::parse("1, 3; 3, 1"));
}

TEST_CASE("parse rejections") {
  CHECK_THROWS_AS(CoxeterMatrix::parse(""), ValidationError);
  CHECK_THROWS_AS(CoxeterMatrix::parse("1 3; 3"), ValidationError);      // ragged
  CHECK_THROWS_AS(CoxeterMatrix::parse("1 3 2; 3 1 2"), ValidationError);  // not square
  CHECK_THROWS_AS(CoxeterMatrix::parse("2 3; 3 1"), ValidationError);    // diagonal
  CHECK_THROWS_AS(CoxeterMatrix::parse("1 1; 1 1"), ValidationError);    // off-diagonal
  CHECK_THROWS_AS(CoxeterMatrix::parse("1 3; 4 1"), ValidationError);    // symmetry
  CHECK_THROWS_AS(CoxeterMatrix::parse("1 x; x 1"), ValidationError);    // token
  CHECK_THROWS_AS(CoxeterMatrix::parse("1 -3; -3 1"), ValidationError);

  CoxeterMatrix m(2);
  CHECK_THROWS_AS(m.set(0, 0, BondOrder{2}), ValidationError);
  CHECK_THROWS_AS(m.set(0, 1, BondOrder{1}), ValidationError);
  CHECK_THROWS_AS(m.set(0, 1, BondOrder{-1}), ValidationError);
}

TEST_CASE("diagram edges appear exactly for bonds >= 3 or infinity") {
  CoxeterMatrix m = CoxeterMatrix::parse("1 2 5; 2 1 0; 5 0 1");
  CoxeterDiagram d = diagram_of(m);
  CHECK(d.edges.size() == 2);
  CHECK(d.label(0, 1) == BondOrder{2});
  CHECK(d.label(0, 2) == BondOrder{5});
  CHECK(d.label(1, 2) == infinite_bond);
  CHECK(matrix_of(d) == m);
}

TEST_CASE("subset validation and parabolic restriction") {
  CoxeterMatrix m = CoxeterMatrix::parse("1 3 2 2; 3 1 4 2; 2 4 1 5; 2 2 5 1");
  GeneratorSubset s = GeneratorSubset::of({3, 1}, 4);
  CHECK(s.indices == std::vector<int>{1, 3});  // sorted
  Restriction r = restrict_to(m, s);
  CHECK(r.matrix.rank() == 2);
  CHECK(r.matrix.at(0, 1) == BondOrder{2});  // m(1,3) = 2
  CHECK(r.index_map == std::vector<int>{1, 3});

  CHECK_THROWS_AS(GeneratorSubset::of({0, 0}, 4), ValidationError);
  CHECK_THROWS_AS(GeneratorSubset::of({4}, 4), ValidationError);
  CHECK_THROWS_AS(GeneratorSubset::of({-1}, 4), ValidationError);

  // restriction of a restriction composes index maps coherently
  GeneratorSubset inner = GeneratorSubset::of({0}, 2);
  Restriction rr = restrict_to(r.matrix, inner);
  CHECK(r.index_map[rr.index_map[0]] == 1);
}

TEST_CASE("connected components split at bonds equal to 2 only") {
  // 0-1 bonded, 2 isolated, 3-4 infinite bond
  CoxeterMatrix m(5);
  m.set(0, 1, BondOrder{3});
  m.set(3, 4, infinite_bond);
  auto comps = connected_components(diagram_of(m));
  REQUIRE(comps.size() == 3);
  CHECK(comps[0].vertex_map == std::vector<int>{0, 1});
  CHECK(comps[1].vertex_map == std::vector<int>{2});
  CHECK(comps[2].vertex_map == std::vector<int>{3, 4});
  CHECK(comps[2].diagram.label(0, 1) == infinite_bond);
}

namespace {

CoxeterMatrix permuted(const CoxeterMatrix& m, const std::vector<int>& perm) {
  CoxeterMatrix out(m.rank());
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j)
      out.set(perm[i], perm[j], m.at(i, j));
  return out;
}

}  // namespace

TEST_CASE("diagram isomorphism finds relabelings and respects labels") {
  CoxeterMatrix b3 = CoxeterMatrix::parse("1 4 2; 4 1 3; 2 3 1");
  std::vector<int> perm{2, 0, 1};
  CoxeterMatrix shuffled = permuted(b3, perm);
  auto iso = diagrams_isomorphic(diagram_of(b3), diagram_of(shuffled));
  REQUIRE(iso.has_value());
  // the found map transports labels
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(b3.at(i, j) == shuffled.at((*iso)[i], (*iso)[j]));

  // A3 path vs B3 path differ by one label only
  CoxeterMatrix a3 = CoxeterMatrix::parse("1 3 2; 3 1 3; 2 3 1");
  CHECK(!diagrams_isomorphic(diagram_of(a3), diagram_of(b3)).has_value());

  // lexicographically least bijection is returned
  CoxeterMatrix path(3);
  path.set(0, 1, BondOrder{3});
  path.set(1, 2, BondOrder{3});
  auto self = diagrams_isomorphic(diagram_of(path), diagram_of(path));
  REQUIRE(self.has_value());
  CHECK(*self == std::vector<int>{0, 1, 2});  // identity beats the flip
}

TEST_CASE("isomorphism on random relabelings of a random matrix") {
  std::mt19937 rng(20240816);
  for (int trial = 0; trial < 25; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 5);
    CoxeterMatrix m(rank);
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        int roll = static_cast<int>(rng() % 5);
        BondOrder b = roll == 4 ? infinite_bond : BondOrder{2 + roll};
        m.set(i, j, b);
      }
    std::vector<int> perm(rank);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(diagrams_isomorphic(diagram_of(m), diagram_of(permuted(m, perm)))
              .has_value());
  }
}

TEST_CASE("isomorphism rank cap") {
  CoxeterMatrix big(13);
  CHECK_THROWS_AS(diagrams_isomorphic(diagram_of(big), diagram_of(big)),
                  ValidationError);
}

TEST_CASE("matrix json round-trip") {
  CoxeterMatrix m = CoxeterMatrix::parse("1 5 0; 5 1 2; 0 2 1");
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  nlohmann::json j = matrix_to_json(m);
  CHECK(j["rank"] == 3);
  CHECK(j["entries"][0][2] == 0);  // infinity encodes as 0
}

TEST_CASE("dot output mentions labeled edges") {
  CoxeterMatrix m = CoxeterMatrix::parse("1 4 0; 4 1 3; 0 3 1");
  std::string dot = to_dot(diagram_of(m));
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find('4') != std::string::npos);
  CHECK(dot.find("inf") != std::string::npos);
}
