#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cox {

// Order of the product of two distinct generators. Disengaged value = infinity.
// The text and JSON formats encode infinity as 0; no magic integer appears in code.
using BondOrder = std::optional<int>;

inline constexpr std::nullopt_t infinite_bond = std::nullopt;

class ValidationError : public std::runtime_error {
 public:
  enum class Code {
    Empty,
    BadToken,
    RaggedRows,
    NotSquare,
    BadDiagonal,
    BadOffDiagonal,
    NotSymmetric,
    BadSubset,
    RankCap,
    BadPoset,
    BadEquipment,
    BadScene,
  };

  ValidationError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Resource-style failures: enumeration budgets, unstabilized polygons,
// suspected non-discreteness. Distinct from input validation.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symmetric matrix of bond orders: m(i,i) = 1, m(i,j) >= 2 or infinite for i != j.
class CoxeterMatrix {
 public:
  // rank >= 1; every off-diagonal entry starts at 2.
  explicit CoxeterMatrix(int rank);

  int rank() const { return rank_; }
  BondOrder at(int i, int j) const { return m_[idx(i, j)]; }
  void set(int i, int j, BondOrder m);  // symmetric; validates the entry

  // Text format: rows separated by ';' or newlines, entries by spaces, 0 = infinity.
  static CoxeterMatrix parse(std::string_view text);
  std::string serialize() const;

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::size_t idx(int i, int j) const;
  int rank_;
  std::vector<BondOrder> m_;
};

// Vertices 0..rank-1; one edge per pair with m >= 3 or m infinite.
struct CoxeterDiagram {
  struct Edge {
    int a, b;        // a < b
    BondOrder label;  // >= 3 or infinite
  };
  int rank = 0;
  std::vector<Edge> edges;

  // Bond order between two vertices; absent edge means 2.
  BondOrder label(int a, int b) const;
};

CoxeterDiagram diagram_of(const CoxeterMatrix&);
CoxeterMatrix matrix_of(const CoxeterDiagram&);

// Sorted, duplicate-free subset of 0..rank-1.
struct GeneratorSubset {
  std::vector<int> indices;

  static GeneratorSubset of(std::vector<int> indices, int rank);  // validates
  bool contains(int i) const;
};

struct Restriction {
  CoxeterMatrix matrix;
  std::vector<int> index_map;  // new index -> original index
};

// Principal submatrix on the subset (standard parabolic restriction).
Restriction restrict_to(const CoxeterMatrix&, const GeneratorSubset&);

struct DiagramComponent {
  CoxeterDiagram diagram;
  std::vector<int> vertex_map;  // local vertex -> original vertex
};

// Components ordered by least original vertex; vertices ascend inside each.
std::vector<DiagramComponent> connected_components(const CoxeterDiagram&);

// Label-preserving vertex bijection d1 -> d2, lexicographically least if one
// exists. Ranks above rank_cap are rejected.
std::optional<std::vector<int>> diagrams_isomorphic(const CoxeterDiagram& d1,
                                                    const CoxeterDiagram& d2,
                                                    int rank_cap = 12);

std::string to_dot(const CoxeterDiagram&);

nlohmann::json matrix_to_json(const CoxeterMatrix&);
CoxeterMatrix matrix_from_json(const nlohmann::json&);
nlohmann::json diagram_to_json(const CoxeterDiagram&);

}  // namespace cox
