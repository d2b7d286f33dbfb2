#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cox/matrix.hpp"

namespace cox {

// Combinatorial shadow of a chamber: faces are identified by the set of walls
// containing them. Distinct faces may share a wall set (two walls can meet in
// more than one face), so faces carry their own index.
struct Face {
  std::vector<int> walls;  // sorted wall indices
  int codim = 0;           // must equal walls.size() for a valid poset
};

struct FacePoset {
  int dimension = 0;   // dimension of the chamber
  int wall_count = 0;
  std::vector<Face> faces;

  // Index of the unique codimension-0 face; -1 when absent or duplicated.
  int chamber_face() const;
  // Indices of faces with the given codimension.
  std::vector<int> faces_of_codim(int codim) const;
  // Face containment: f lies in g iff g's wall set is a subset of f's.
  static bool contained_in(const Face& f, const Face& g);
};

FacePoset simplex_poset(int n);   // n+1 walls, faces = wall subsets of size <= n
FacePoset cube_poset(int k);      // 2k walls in opposite pairs
FacePoset interval_poset();       // the 1-simplex

struct CheckReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

CheckReport validate_face_poset(const FacePoset&);

// n >= 2 per codimension-2 face: the dihedral angle there is pi/n.
struct AngleLabels {
  std::map<int, int> by_face;  // face index -> n
};

struct Equipment {
  CoxeterMatrix matrix;               // target system (G, S)
  std::vector<int> wall_to_generator; // wall index -> generator index

  // Generators attached to the face's walls.
  GeneratorSubset face_subset(const FacePoset&, int face) const;
};

// Wall map must be surjective; every face of codimension >= 1 must generate a
// finite standard parabolic; face map order reversal is re-checked.
CheckReport validate_equipment(const FacePoset&, const Equipment&);

// One generator per wall; bond orders read off shared codimension-2 faces,
// infinite for wall pairs sharing none. Throws ValidationError when two walls
// share faces with different labels or some face group comes out infinite.
Equipment universal_equipment(const FacePoset&, const AngleLabels&);

// Distinct generators on the two walls of every labelled face, and the bond
// order equal to the label.
CheckReport is_admissible(const FacePoset&, const AngleLabels&, const Equipment&);

// Wall i -> generator i for a rank n+1 system on the n-simplex.
Equipment natural_simplex_equipment(const CoxeterMatrix&);

nlohmann::json poset_to_json(const FacePoset&);
FacePoset poset_from_json(const nlohmann::json&);
nlohmann::json labels_to_json(const AngleLabels&);
AngleLabels labels_from_json(const nlohmann::json&);
nlohmann::json equipment_to_json(const Equipment&);
Equipment equipment_from_json(const nlohmann::json&);

}  // namespace cox
