#pragma once

#include <string>
#include <vector>

#include "cox/classify.hpp"
#include "cox/matrix.hpp"

namespace cox {

enum class EquipmentClass { Spherical, Affine, HyperbolicType };
std::string equipment_class_name(EquipmentClass);

// A Coxeter system equipping the n-simplex: rank n+1 and every generator
// deletion leaves a finite system.
struct SimplexEquipmentRecord {
  CoxeterMatrix matrix;        // canonical representative of its isomorphism class
  std::string canonical_form;  // upper-triangle encoding, "inf" for infinite bonds
  EquipmentClass cls = EquipmentClass::Spherical;
  ClassificationReport report;
};

// All records with bond orders in {2..m_max}, plus infinite bonds when
// allow_infinity is set, up to diagram isomorphism. Sorted by class and then
// by canonical form.
std::vector<SimplexEquipmentRecord> enumerate_simplex_equipments(
    int n, int m_max, bool allow_infinity = false);

nlohmann::json records_to_json(const std::vector<SimplexEquipmentRecord>&);
std::string records_to_csv(const std::vector<SimplexEquipmentRecord>&);

}  // namespace cox
