#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "cox/classify.hpp"

using namespace cox;

namespace {

CoxeterMatrix path(std::vector<int> bonds) {
  CoxeterMatrix m(static_cast<int>(bonds.size()) + 1);
  for (std::size_t i = 0; i < bonds.size(); ++i)
    m.set(static_cast<int>(i), static_cast<int>(i) + 1,
          bonds[i] == 0 ? infinite_bond : BondOrder{bonds[i]});
  return m;
}

ClassificationReport classify_text(const std::string& text) {
  return classify_system(CoxeterMatrix::parse(text));
}

}  // namespace

TEST_CASE("finite catalog names and orders") {
  struct Row {
    std::string text;
    std::string name;
    unsigned long long order;
  };
  // Orders are the classical values: (l+1)!, 2^l l!, 2^{l-1} l!, 1152, 120, 14400, 2m.
  const Row rows[] = {
      {"1", "A1", 2},
      {"1 3; 3 1", "A2", 6},
      {"1 3 2; 3 1 3; 2 3 1", "A3", 24},
      {"1 3 2 2; 3 1 3 2; 2 3 1 3; 2 2 3 1", "A4", 120},
      {"1 4; 4 1", "B2", 8},
      {"1 4 2; 4 1 3; 2 3 1", "B3", 48},
      {"1 4 2 2; 4 1 3 2; 2 3 1 3; 2 2 3 1", "B4", 384},
      {"1 3 2 2; 3 1 3 3; 2 3 1 2; 2 3 2 1", "D4", 192},
      {"1 3 2 2; 3 1 4 2; 2 4 1 3; 2 2 3 1", "F4", 1152},
      {"1 5 2; 5 1 3; 2 3 1", "H3", 120},
      {"1 5 2 2; 5 1 3 2; 2 3 1 3; 2 2 3 1", "H4", 14400},
      {"1 6; 6 1", "G2", 12},
      {"1 7; 7 1", "I2(7)", 14},
      {"1 0; 0 1", "A~1", 0},
  };
  for (const auto& row : rows) {
    CAPTURE(row.text);
    ClassificationReport r = classify_text(row.text);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].name() == row.name);
    if (row.order) {
      REQUIRE(r.verdict == Verdict::Finite);
      CHECK(decimal_string(*r.order) == std::to_string(row.order));
    } else {
      CHECK(r.verdict == Verdict::Affine);
      CHECK(!r.order.has_value());
    }
  }
}

TEST_CASE("E and D series orders") {
  // D5: path with a fork at one end.
  CoxeterMatrix d5(5);
  d5.set(0, 2, BondOrder{3});
  d5.set(1, 2, BondOrder{3});
  d5.set(2, 3, BondOrder{3});
  d5.set(3, 4, BondOrder{3});
  ClassificationReport rd5 = classify_system(d5);
  CHECK(rd5.components[0].name() == "D5");
  CHECK(decimal_string(*rd5.order) == "1920");  // 2^4 * 5!

  // E6/E7/E8: path 0-1-2-3-4(-5(-6)) with branch vertex attached at index 2.
  for (int rank : {6, 7, 8}) {
    CoxeterMatrix e(rank);
    for (int i = 0; i + 1 < rank - 1; ++i) e.set(i, i + 1, BondOrder{3});
    e.set(2, rank - 1, BondOrder{3});
    ClassificationReport r = classify_system(e);
    CHECK(r.components[0].name() == "E" + std::to_string(rank));
    static const std::map<int, std::string> orders{
        {6, "51840"}, {7, "2903040"}, {8, "696729600"}};
    CHECK(decimal_string(*r.order) == orders.at(rank));
  }
}

TEST_CASE("dihedral aliases") {
  ClassificationReport a2 = classify_text("1 3; 3 1");
  CHECK(a2.components[0].family == Family::A);
  REQUIRE(a2.components[0].alias.has_value());
  CHECK(*a2.components[0].alias == "I2(3)");

  ClassificationReport b2 = classify_text("1 4; 4 1");
  CHECK(b2.components[0].family == Family::B);
  REQUIRE(b2.components[0].alias.has_value());
  CHECK(*b2.components[0].alias == "I2(4)");

  ClassificationReport g2 = classify_text("1 6; 6 1");
  CHECK(g2.components[0].name() == "G2");
  REQUIRE(g2.components[0].dihedral_m.has_value());
  CHECK(*g2.components[0].dihedral_m == 6);

  ClassificationReport i5 = classify_text("1 5; 5 1");
  CHECK(i5.components[0].family == Family::I2);
  CHECK(i5.components[0].name() == "I2(5)");
}

TEST_CASE("affine names") {
  // C~2 = (4,4) path; G~2 = (6,3) path; A~2 = triangle of 3s.
  CHECK(classify_text("1 4 2; 4 1 4; 2 4 1").components[0].name() == "C~2");
  CHECK(classify_text("1 6 2; 6 1 3; 2 3 1").components[0].name() == "G~2");
  CHECK(classify_text("1 3 3; 3 1 3; 3 3 1").components[0].name() == "A~2");
  CHECK(classify_text("1 3 3; 3 1 3; 3 3 1").verdict == Verdict::Affine);

  // B~3 = fork  at one end of a path ending in a 4-bond.
  CoxeterMatrix b3t(4);
  b3t.set(0, 2, BondOrder{3});
  b3t.set(1, 2, BondOrder{3});
  b3t.set(2, 3, BondOrder{4});
  CHECK(classify_system(b3t).components[0].name() == "B~3");

  // A~3 = 4-cycle of 3-bonds.
  CoxeterMatrix a3t(4);
  a3t.set(0, 1, BondOrder{3});
  a3t.set(1, 2, BondOrder{3});
  a3t.set(2, 3, BondOrder{3});
  a3t.set(0, 3, BondOrder{3});
  CHECK(classify_system(a3t).components[0].name() == "A~3");

  // D~4 = star with four 3-bond leaves.
  CoxeterMatrix d4t(5);
  for (int leaf : {0, 1, 3, 4}) d4t.set(leaf, 2, BondOrder{3});
  CHECK(classify_system(d4t).components[0].name() == "D~4");

  // F~4 = path 3,4,3,3... actually F~4 is the path with bonds 3,3,4,3.
  CHECK(classify_system(path({3, 3, 4, 3})).components[0].name() == "F~4");
}

TEST_CASE("verdict semantics over components") {
  // finite x finite = finite, orders multiply
  ClassificationReport ff = classify_text("1 3 2; 3 1 2; 2 2 1");
  CHECK(ff.verdict == Verdict::Finite);
  CHECK(decimal_string(*ff.order) == "12");  // |A2| * |A1|
  CHECK(ff.components.size() == 2);

  // every infinite component affine = affine, finite factors allowed
  ClassificationReport fa = classify_text("1 2 2; 2 1 0; 2 0 1");
  CHECK(fa.verdict == Verdict::Affine);
  CHECK(!fa.order.has_value());

  CoxeterMatrix aa(4);
  aa.set(0, 1, infinite_bond);
  aa.set(2, 3, infinite_bond);
  CHECK(classify_system(aa).verdict == Verdict::Affine);

  // indefinite component and no affine one = indefinite
  ClassificationReport ind = classify_text("1 7 2; 7 1 7; 2 7 1");
  CHECK(ind.verdict == Verdict::Indefinite);
  CHECK(ind.components[0].family == Family::Indefinite);

  // affine and indefinite components together = mixed
  CoxeterMatrix mixed(5);
  mixed.set(0, 1, infinite_bond);
  mixed.set(2, 3, BondOrder{7});
  mixed.set(3, 4, BondOrder{7});
  mixed.set(2, 4, BondOrder{7});
  CHECK(classify_system(mixed).verdict == Verdict::Mixed);
}

TEST_CASE("gram verdict on connected systems") {
  CHECK(gram_verdict_connected(CoxeterMatrix::parse("1 5; 5 1")) ==
        Verdict::Finite);
  CHECK(gram_verdict_connected(CoxeterMatrix::parse("1 0; 0 1")) ==
        Verdict::Affine);
  CHECK(gram_verdict_connected(path({3, 3, 4, 3})) == Verdict::Affine);
  CHECK(gram_verdict_connected(CoxeterMatrix::parse("1 3 3; 3 1 3; 3 3 1")) ==
        Verdict::Affine);
  // hyperbolic triangle (2,3,7)
  CHECK(gram_verdict_connected(CoxeterMatrix::parse("1 3 2; 3 1 7; 2 7 1")) ==
        Verdict::Indefinite);
  // Lanner (5,3,5)
  CHECK(gram_verdict_connected(CoxeterMatrix::parse("1 5 2; 5 1 5; 2 5 1")) ==
        Verdict::Indefinite);
}

TEST_CASE("catalog agrees with gram on a deterministic sweep") {
  // All connected path matrices of rank 3 with bonds in {2..6, inf}: the
  // classify_system cross-check throws std::logic_error on any disagreement,
  // so surviving the sweep is the assertion.
  const int choices[] = {2, 3, 4, 5, 6, 0};
  int finite = 0, affine = 0, indefinite = 0;
  for (int b1 : choices)
    for (int b2 : choices) {
      CoxeterMatrix m = path({b1, b2});
      for (const auto& comp : classify_system(m).components) {
        Restriction sub =
            restrict_to(m, GeneratorSubset::of(comp.vertex_map, m.rank()));
        Verdict direct = gram_verdict_connected(sub.matrix);
        if (direct == Verdict::Finite) ++finite;
        if (direct == Verdict::Affine) ++affine;
        if (direct == Verdict::Indefinite) ++indefinite;
        CHECK(family_is_finite(comp.family) == (direct == Verdict::Finite));
        CHECK(family_is_affine(comp.family) == (direct == Verdict::Affine));
      }
    }
  CHECK(finite > 0);
  CHECK(affine > 0);
  CHECK(indefinite > 0);
}

TEST_CASE("finite_group_order guard") {
  CHECK(decimal_string(finite_group_order(CoxeterMatrix::parse("1 3; 3 1"))) ==
        "6");
  CHECK_THROWS_AS(finite_group_order(CoxeterMatrix::parse("1 0; 0 1")),
                  ComputationError);
}

TEST_CASE("report json shape") {
  nlohmann::json j = report_to_json(classify_text("1 4; 4 1"));
  CHECK(j["verdict"] == "finite");
  CHECK(j["order"] == "8");
  CHECK(j["components"][0]["name"] == "B2");
  CHECK(j["components"][0]["alias"] == "I2(4)");
}
