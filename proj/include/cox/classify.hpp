#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cox/matrix.hpp"

namespace cox {

// Group orders of products over components exceed 64 bits at larger ranks.
using BigCount = unsigned __int128;
std::string decimal_string(BigCount);

enum class Family {
  A, B, D, E6, E7, E8, F4, H3, H4, I2,
  AffineA1, AffineA, AffineB, AffineC, AffineD,
  AffineE6, AffineE7, AffineE8, AffineF4, AffineG2,
  Indefinite,
};

bool family_is_finite(Family);
bool family_is_affine(Family);
std::string family_name(Family);

struct ComponentLabel {
  Family family = Family::Indefinite;
  int rank = 0;                     // vertex count of the component
  std::optional<int> dihedral_m;    // engaged for I2(m)
  std::optional<std::string> alias; // dihedral alias, e.g. "I2(4)" on B2
  std::vector<int> vertex_map;      // component vertices in the input matrix

  std::string name() const;        // "A3", "I2(7)", "G2", "A~2", ...
  std::optional<BigCount> order() const;  // engaged for finite families
};

enum class Verdict { Finite, Affine, Mixed, Indefinite };
std::string verdict_name(Verdict);

struct ClassificationReport {
  std::vector<ComponentLabel> components;
  Verdict verdict = Verdict::Indefinite;
  std::optional<BigCount> order;  // engaged when the verdict is Finite
};

// Catalog matching per connected component, without the numeric cross-check.
ClassificationReport classify_by_catalog(const CoxeterMatrix&, int rank_cap = 12);

// Verdict a connected component must have according to the Gram inertia:
// positive definite = Finite, semidefinite with nullity one = Affine,
// anything with a negative direction = Indefinite.
Verdict gram_verdict_connected(const CoxeterMatrix&, double tol = 1e-9);

// Catalog matching cross-checked per component against the Gram inertia;
// throws std::logic_error if the two routes ever disagree.
ClassificationReport classify_system(const CoxeterMatrix&, int rank_cap = 12);

// Order of the group when classify_system says Finite; throws otherwise.
BigCount finite_group_order(const CoxeterMatrix&);

nlohmann::json report_to_json(const ClassificationReport&);

}  // namespace cox
