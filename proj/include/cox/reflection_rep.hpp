#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "cox/matrix.hpp"

namespace cox {

// Entrywise equality tolerance for representation matrices.
inline constexpr double kMatrixTol = 1e-9;
// Quantum used when hashing matrix entries into buckets.
inline constexpr double kHashQuantum = 1e-6;

// B(i,j) = -cos(pi / m(i,j)); infinite bonds map to -1.
Eigen::MatrixXd gram_matrix(const CoxeterMatrix&);

struct Signature {
  int positive = 0, zero = 0, negative = 0;
  bool operator==(const Signature&) const = default;
};

// Inertia of a symmetric matrix; eigenvalues within tol of 0 count as zero.
Signature signature(const Eigen::MatrixXd&, double tol = kMatrixTol);

// Reflections sigma_i(e_j) = e_j - 2 B(e_i, e_j) e_i in the basis e_0..e_{r-1}.
std::vector<Eigen::MatrixXd> tits_generators(const CoxeterMatrix&);

// Canonicalises doubles produced by products of generator matrices: the first
// representative of each value within tol becomes the stored one, so snapped
// matrices compare bitwise.
class ValuePool {
 public:
  explicit ValuePool(double tol = kMatrixTol) : tol_(tol) {}
  double snap(double x);                         // inserts new values
  std::optional<double> find(double x) const;    // lookup only
  std::size_t size() const { return values_.size(); }

 private:
  std::set<double> values_;
  double tol_;
};

using ElementId = std::int32_t;
inline constexpr ElementId no_element = -1;

// Group elements as matrices of the geometric representation, enumerated
// breadth-first from the identity; element order is shortlex word order.
struct ChamberGraph {
  struct Element {
    std::vector<int> word;  // shortlex-least reduced word
    int length = 0;
    Eigen::MatrixXd matrix;
  };

  int rank = 0;
  std::vector<Element> elements;
  // right[g][s] = g*s, left[g][s] = s*g; no_element where the product was not
  // enumerated (incomplete graphs only).
  std::vector<std::vector<ElementId>> right;
  std::vector<std::vector<ElementId>> left;
  bool complete = false;
  int max_length = 0;

  std::optional<ElementId> find(const Eigen::MatrixXd&) const;
  ElementId walk(ElementId from, std::span<const int> word) const;  // no_element if it exits

  ValuePool pool;
  std::unordered_map<std::uint64_t, std::vector<ElementId>> buckets;
};

// BFS closure of the generators; stops adding elements beyond the budget or
// past words of length max_len, leaving complete = false.
ChamberGraph enumerate_group(const CoxeterMatrix&, std::size_t budget,
                             std::optional<int> max_len = std::nullopt);

struct Calculus {
  ElementId element;
  int length;
  std::vector<bool> in_p_plus;  // per generator s: l(s*g) > l(g)
};

// Evaluates a word in the graph. Throws ComputationError if the walk exits an
// incomplete graph.
Calculus element_calculus(const ChamberGraph&, std::span<const int> word);

// Order of the element, disengaged when the power walk exits an incomplete graph.
std::optional<int> order_of_element(const ChamberGraph&, ElementId);

struct BourbakiReport {
  struct Property {
    bool pass = true;
    std::vector<std::string> witnesses;
  };
  Property intersection;  // the common part of all P_s^+ is {e}
  Property partition;     // G = P_s^+ disjoint-union s P_s^+
  Property exchange;      // g in P_s^+, g s' outside it => s = g s' g^{-1}
  bool all_pass() const {
    return intersection.pass && partition.pass && exchange.pass;
  }
};

// Requires a complete graph.
BourbakiReport check_bourbaki(const ChamberGraph&);
// Same checks against caller-supplied membership tables p_plus[s][g].
BourbakiReport check_bourbaki_sets(const ChamberGraph&,
                                   const std::vector<std::vector<bool>>& p_plus);

nlohmann::json graph_to_json(const ChamberGraph&);
std::string graph_to_dot(const ChamberGraph&);

}  // namespace cox
