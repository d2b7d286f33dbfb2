#include "cox/classify.hpp"

#include <algorithm>

#include <json.hpp>

#include "cox/reflection_rep.hpp"

namespace cox {

std::string decimal_string(BigCount v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool family_is_finite(Family f) {
  switch (f) {
    case Family::A:
    case Family::B:
    case Family::D:
    case Family::E6:
    case Family::E7:
    case Family::E8:
    case Family::F4:
    case Family::H3:
    case Family::H4:
    case Family::I2:
      return true;
    default:
      return false;
  }
}

bool family_is_affine(Family f) {
  switch (f) {
    case Family::AffineA1:
    case Family::AffineA:
    case Family::AffineB:
    case Family::AffineC:
    case Family::AffineD:
    case Family::AffineE6:
    case Family::AffineE7:
    case Family::AffineE8:
    case Family::AffineF4:
    case Family::AffineG2:
      return true;
    default:
      return false;
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::H3: return "H3";
    case Family::H4: return "H4";
    case Family::I2: return "I2";
    case Family::AffineA1: return "A~1";
    case Family::AffineA: return "A~";
    case Family::AffineB: return "B~";
    case Family::AffineC: return "C~";
    case Family::AffineD: return "D~";
    case Family::AffineE6: return "E~6";
    case Family::AffineE7: return "E~7";
    case Family::AffineE8: return "E~8";
    case Family::AffineF4: return "F~4";
    case Family::AffineG2: return "G~2";
    case Family::Indefinite: return "indefinite";
  }
  return "?";
}

std::string ComponentLabel::name() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::I2:
      if (dihedral_m == 6) return "G2";
      return "I2(" + std::to_string(dihedral_m.value()) + ")";
    case Family::AffineA: return "A~" + std::to_string(rank - 1);
    case Family::AffineB: return "B~" + std::to_string(rank - 1);
    case Family::AffineC: return "C~" + std::to_string(rank - 1);
    case Family::AffineD: return "D~" + std::to_string(rank - 1);
    default: return family_name(family);
  }
}

namespace {

BigCount factorial(int n) {
  BigCount v = 1;
  for (int i = 2; i <= n; ++i) v *= static_cast<unsigned>(i);
  return v;
}

BigCount pow2(int n) { return BigCount{1} << n; }

}  // namespace

std::optional<BigCount> ComponentLabel::order() const {
  switch (family) {
    case Family::A: return factorial(rank + 1);
    case Family::B: return pow2(rank) * factorial(rank);
    case Family::D: return pow2(rank - 1) * factorial(rank);
    case Family::E6: return BigCount{51840};
    case Family::E7: return BigCount{2903040};
    case Family::E8: return BigCount{696729600};
    case Family::F4: return BigCount{1152};
    case Family::H3: return BigCount{120};
    case Family::H4: return BigCount{14400};
    case Family::I2: return BigCount{2} * static_cast<unsigned>(*dihedral_m);
    default: return std::nullopt;
  }
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "finite";
    case Verdict::Affine: return "affine";
    case Verdict::Mixed: return "mixed";
    case Verdict::Indefinite: return "indefinite";
  }
  return "?";
}

namespace {

struct Candidate {
  CoxeterMatrix matrix;
  Family family;
};

CoxeterMatrix path_diagram(const std::vector<int>& labels) {
  CoxeterMatrix m(static_cast<int>(labels.size()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i)
    m.set(static_cast<int>(i), static_cast<int>(i) + 1, labels[i]);
  return m;
}

// Three simply laced arms of the given lengths joined at a central vertex.
CoxeterMatrix star_diagram(int a1, int a2, int a3) {
  CoxeterMatrix m(1 + a1 + a2 + a3);
  int next = 1;
  for (int arm : {a1, a2, a3}) {
    int prev = 0;
    for (int k = 0; k < arm; ++k) {
      m.set(prev, next, 3);
      prev = next++;
    }
  }
  return m;
}

std::vector<int> repeat(int value, int count) {
  return std::vector<int>(static_cast<std::size_t>(count), value);
}

std::vector<Candidate> finite_candidates(int r) {
  std::vector<Candidate> out;
  if (r == 1) {
    out.push_back({CoxeterMatrix(1), Family::A});
    return out;
  }
  if (r == 2) return out;  // dihedral components are read off directly
  out.push_back({path_diagram(repeat(3, r - 1)), Family::A});
  {
    auto labels = repeat(3, r - 1);
    labels.back() = 4;
    out.push_back({path_diagram(labels), Family::B});
  }
  if (r >= 4) out.push_back({star_diagram(1, 1, r - 3), Family::D});
  if (r == 6) out.push_back({star_diagram(1, 2, 2), Family::E6});
  if (r == 7) out.push_back({star_diagram(1, 2, 3), Family::E7});
  if (r == 8) out.push_back({star_diagram(1, 2, 4), Family::E8});
  if (r == 4) out.push_back({path_diagram({3, 4, 3}), Family::F4});
  if (r == 3) out.push_back({path_diagram({5, 3}), Family::H3});
  if (r == 4) out.push_back({path_diagram({5, 3, 3}), Family::H4});
  return out;
}

std::vector<Candidate> affine_candidates(int r) {
  std::vector<Candidate> out;
  if (r < 3) return out;  // the rank-2 affine system is the infinite bond
  {
    CoxeterMatrix cycle(r);
    for (int i = 0; i < r; ++i) cycle.set(i, (i + 1) % r, 3);
    out.push_back({std::move(cycle), Family::AffineA});
  }
  {
    auto labels = repeat(3, r - 1);
    labels.front() = 4;
    labels.back() = 4;
    out.push_back({path_diagram(labels), Family::AffineC});
  }
  if (r >= 4) {
    // Fork at one end, bond of order 4 at the other.
    CoxeterMatrix m(r);
    m.set(0, 2, 3);
    m.set(1, 2, 3);
    for (int i = 2; i + 1 < r; ++i) m.set(i, i + 1, i + 2 == r ? 4 : 3);
    out.push_back({std::move(m), Family::AffineB});
  }
  if (r >= 5) {
    CoxeterMatrix m(r);
    m.set(0, 2, 3);
    m.set(1, 2, 3);
    for (int i = 2; i + 3 < r; ++i) m.set(i, i + 1, 3);
    m.set(r - 3, r - 2, 3);
    m.set(r - 3, r - 1, 3);
    out.push_back({std::move(m), Family::AffineD});
  }
  if (r == 7) out.push_back({star_diagram(2, 2, 2), Family::AffineE6});
  if (r == 8) out.push_back({star_diagram(1, 3, 3), Family::AffineE7});
  if (r == 9) out.push_back({star_diagram(1, 2, 5), Family::AffineE8});
  if (r == 5) out.push_back({path_diagram({3, 3, 4, 3}), Family::AffineF4});
  if (r == 3) out.push_back({path_diagram({3, 6}), Family::AffineG2});
  return out;
}

ComponentLabel classify_component(const DiagramComponent& comp, int rank_cap) {
  ComponentLabel label;
  label.rank = comp.diagram.rank;
  label.vertex_map = comp.vertex_map;

  if (label.rank == 2) {
    BondOrder m = comp.diagram.edges.at(0).label;
    if (!m.has_value()) {
      label.family = Family::AffineA1;
    } else if (*m == 3) {
      label.family = Family::A;
      label.alias = "I2(3)";
    } else if (*m == 4) {
      label.family = Family::B;
      label.alias = "I2(4)";
    } else {
      label.family = Family::I2;
      label.dihedral_m = *m;
      if (*m == 6) label.alias = "I2(6)";
    }
    return label;
  }

  for (const auto& cand : finite_candidates(label.rank))
    if (diagrams_isomorphic(comp.diagram, diagram_of(cand.matrix), rank_cap)) {
      label.family = cand.family;
      return label;
    }
  for (const auto& cand : affine_candidates(label.rank))
    if (diagrams_isomorphic(comp.diagram, diagram_of(cand.matrix), rank_cap)) {
      label.family = cand.family;
      return label;
    }
  label.family = Family::Indefinite;
  return label;
}

}  // namespace

ClassificationReport classify_by_catalog(const CoxeterMatrix& m, int rank_cap) {
  if (m.rank() > rank_cap)
    throw ValidationError(ValidationError::Code::RankCap,
                          "rank exceeds the classification cap");
  ClassificationReport report;
  for (const auto& comp : connected_components(diagram_of(m)))
    report.components.push_back(classify_component(comp, rank_cap));

  bool any_affine = false, any_indefinite = false;
  for (const auto& c : report.components) {
    if (family_is_affine(c.family)) any_affine = true;
    if (c.family == Family::Indefinite) any_indefinite = true;
  }
  if (!any_affine && !any_indefinite) {
    report.verdict = Verdict::Finite;
    BigCount order = 1;
    for (const auto& c : report.components) order *= c.order().value();
    report.order = order;
  } else if (!any_indefinite) {
    report.verdict = Verdict::Affine;
  } else if (!any_affine) {
    report.verdict = Verdict::Indefinite;
  } else {
    report.verdict = Verdict::Mixed;
  }
  return report;
}

Verdict gram_verdict_connected(const CoxeterMatrix& m, double tol) {
  Signature s = signature(gram_matrix(m), tol);
  if (s.negative > 0) return Verdict::Indefinite;
  if (s.zero == 0) return Verdict::Finite;
  return Verdict::Affine;
}

ClassificationReport classify_system(const CoxeterMatrix& m, int rank_cap) {
  ClassificationReport report = classify_by_catalog(m, rank_cap);
  for (const auto& label : report.components) {
    auto sub = restrict_to(m, GeneratorSubset::of(label.vertex_map, m.rank()));
    Verdict numeric = gram_verdict_connected(sub.matrix);
    Verdict expected = family_is_finite(label.family) ? Verdict::Finite
                       : family_is_affine(label.family)
                           ? Verdict::Affine
                           : Verdict::Indefinite;
    if (numeric != expected)
      throw std::logic_error("catalog label " + label.name() +
                             " disagrees with the Gram inertia verdict " +
                             verdict_name(numeric));
  }
  return report;
}

BigCount finite_group_order(const CoxeterMatrix& m) {
  ClassificationReport report = classify_system(m);
  if (report.verdict != Verdict::Finite)
    throw ComputationError("group is not finite");
  return report.order.value();
}

nlohmann::json report_to_json(const ClassificationReport& r) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json jc{{"name", c.name()},
                      {"family", family_name(c.family)},
                      {"rank", c.rank},
                      {"vertices", c.vertex_map}};
    if (c.alias) jc["alias"] = *c.alias;
    if (auto o = c.order()) jc["order"] = decimal_string(*o);
    components.push_back(std::move(jc));
  }
  nlohmann::json out{{"components", std::move(components)},
                     {"verdict", verdict_name(r.verdict)}};
  if (r.order) out["order"] = decimal_string(*r.order);
  return out;
}

}  // namespace cox
