#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cox/chamber.hpp"
#include "cox/reflection_rep.hpp"

namespace cox {

// Cell of the universal space: a face of the chamber together with a coset of
// the standard parabolic generated by the face's walls. The representative is
// the shortlex-least coset member.
struct Cell {
  int face = 0;
  ElementId rep = 0;
  int dim = 0;
  bool boundary = false;
};

struct CellComplex {
  FacePoset poset;
  Equipment equipment;
  ChamberGraph graph;

  std::vector<Cell> cells;
  // cell_of[face][element] = id of the cell whose coset contains the element.
  std::vector<std::vector<int>> cell_of;
  // (container, contained): the second cell lies in the closure of the first.
  std::vector<std::pair<int, int>> incidence;
  std::vector<int> chamber_cell_of_element;  // element id -> chamber cell id

  // One crossing per wall cell with both chambers in the ball: the chambers of
  // elements a and b = a * s(wall) meet along that cell.
  struct Crossing {
    int wall_cell;
    ElementId a, b;
    int wall;
  };
  std::vector<Crossing> crossings;

  bool truncated = false;
  int ball_radius = 0;
};

// Enumerates the group (fully when finite, as a word-length ball otherwise)
// and assembles cells, incidence and the chamber action.
CellComplex build_universal_space(const FacePoset&, const Equipment&,
                                  std::optional<int> ball_radius = std::nullopt,
                                  std::size_t budget = 2'000'000);

struct ManifoldReport {
  struct Check {
    bool pass = true;
    std::vector<std::string> witnesses;
  };
  Check wall_cells;    // every interior wall cell meets exactly two chambers
  Check action_free;   // includes well-definedness of the generator action
  Check action_transitive;
  Check connected;     // chamber-adjacency graph on the interior
  bool all_pass() const {
    return wall_cells.pass && action_free.pass && action_transitive.pass &&
           connected.pass;
  }
};

ManifoldReport check_manifold_and_action(const CellComplex&);

// Alternating cell count; complete builds only.
long long euler_characteristic(const CellComplex&);

// Component count of the chamber-adjacency graph after removing the wall
// cells fixed by each generator; complete builds only.
std::vector<int> generator_dissection_counts(const CellComplex&);

nlohmann::json complex_to_json(const CellComplex&);
std::string adjacency_to_dot(const CellComplex&);

}  // namespace cox
