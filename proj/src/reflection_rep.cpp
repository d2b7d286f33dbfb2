#include "cox/reflection_rep.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace cox {

Eigen::MatrixXd gram_matrix(const CoxeterMatrix& m) {
  const int r = m.rank();
  Eigen::MatrixXd b(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      BondOrder o = m.at(i, j);
      b(i, j) = o.has_value() ? -std::cos(std::numbers::pi / *o) : -1.0;
    }
  return b;
}

Signature signature(const Eigen::MatrixXd& b, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b, Eigen::EigenvaluesOnly);
  Signature s;
  for (double ev : solver.eigenvalues()) {
    if (ev > tol)
      ++s.positive;
    else if (ev < -tol)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

std::vector<Eigen::MatrixXd> tits_generators(const CoxeterMatrix& m) {
  const int r = m.rank();
  Eigen::MatrixXd b = gram_matrix(m);
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(r);
  for (int i = 0; i < r; ++i) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(r, r);
    s.row(i) -= 2.0 * b.row(i);
    gens.push_back(std::move(s));
  }
  return gens;
}

double ValuePool::snap(double x) {
  auto it = values_.lower_bound(x);
  double best = x;
  double dist = tol_;
  if (it != values_.end() && std::abs(*it - x) <= dist) {
    best = *it;
    dist = std::abs(*it - x);
  }
  if (it != values_.begin()) {
    double below = *std::prev(it);
    if (std::abs(below - x) <= dist) best = below;
  }
  if (best == x && values_.find(x) == values_.end()) values_.insert(x);
  return best;
}

std::optional<double> ValuePool::find(double x) const {
  auto it = values_.lower_bound(x);
  std::optional<double> best;
  double dist = tol_;
  if (it != values_.end() && std::abs(*it - x) <= dist) {
    best = *it;
    dist = std::abs(*it - x);
  }
  if (it != values_.begin()) {
    double below = *std::prev(it);
    if (std::abs(below - x) <= dist) best = below;
  }
  return best;
}

namespace {

std::uint64_t matrix_hash(const Eigen::MatrixXd& m) {
  // Entries are pool representatives, so quantising them is deterministic.
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto q = static_cast<std::int64_t>(std::llround(m(i, j) / kHashQuantum));
      h ^= std::bit_cast<std::uint64_t>(q);
      h *= 1099511628211ull;
    }
  return h;
}

bool matrices_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() < kMatrixTol;
}

bool snap_matrix(Eigen::MatrixXd& m, ValuePool& pool, bool insert) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (insert) {
        m(i, j) = pool.snap(m(i, j));
      } else {
        auto v = pool.find(m(i, j));
        if (!v.has_value()) return false;
        m(i, j) = *v;
      }
    }
  return true;
}

ElementId bucket_find(const ChamberGraph& g, const Eigen::MatrixXd& m) {
  auto it = g.buckets.find(matrix_hash(m));
  if (it == g.buckets.end()) return no_element;
  for (ElementId id : it->second)
    if (matrices_equal(g.elements[id].matrix, m)) return id;
  return no_element;
}

}  // namespace

std::optional<ElementId> ChamberGraph::find(const Eigen::MatrixXd& m) const {
  Eigen::MatrixXd snapped = m;
  for (int i = 0; i < snapped.rows(); ++i)
    for (int j = 0; j < snapped.cols(); ++j) {
      auto v = pool.find(snapped(i, j));
      if (!v.has_value()) return std::nullopt;  // value never seen in the group
      snapped(i, j) = *v;
    }
  ElementId id = bucket_find(*this, snapped);
  if (id == no_element) return std::nullopt;
  return id;
}

ElementId ChamberGraph::walk(ElementId from, std::span<const int> word) const {
  ElementId cur = from;
  for (int s : word) {
    if (cur == no_element) return no_element;
    cur = right[cur][s];
  }
  return cur;
}

ChamberGraph enumerate_group(const CoxeterMatrix& m, std::size_t budget,
                             std::optional<int> max_len) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  const int r = m.rank();
  auto gens = tits_generators(m);

  ChamberGraph g;
  g.rank = r;

  ChamberGraph::Element identity;
  identity.matrix = Eigen::MatrixXd::Identity(r, r);
  snap_matrix(identity.matrix, g.pool, true);
  for (auto& gen : gens) snap_matrix(gen, g.pool, true);
  g.buckets[matrix_hash(identity.matrix)].push_back(0);
  g.elements.push_back(std::move(identity));
  g.right.push_back(std::vector<ElementId>(r, no_element));

  bool truncated = false;
  for (std::size_t qi = 0; qi < g.elements.size(); ++qi) {
    const int len = g.elements[qi].length;
    const bool expand = !max_len.has_value() || len < *max_len;
    for (int s = 0; s < r; ++s) {
      Eigen::MatrixXd prod = g.elements[qi].matrix * gens[s];
      const bool may_add = expand && g.elements.size() < budget;
      if (!snap_matrix(prod, g.pool, may_add)) {
        g.right[qi][s] = no_element;
        truncated = true;
        continue;
      }
      ElementId found = bucket_find(g, prod);
      if (found != no_element) {
        g.right[qi][s] = found;
      } else if (may_add) {
        ChamberGraph::Element next;
        next.word = g.elements[qi].word;
        next.word.push_back(s);
        next.length = len + 1;
        next.matrix = std::move(prod);
        ElementId id = static_cast<ElementId>(g.elements.size());
        g.buckets[matrix_hash(next.matrix)].push_back(id);
        g.elements.push_back(std::move(next));
        g.right.push_back(std::vector<ElementId>(r, no_element));
        g.right[qi][s] = id;
      } else {
        g.right[qi][s] = no_element;
        truncated = true;
      }
    }
  }

  g.complete = !truncated;
  g.max_length = g.elements.back().length;

  g.left.assign(g.elements.size(), std::vector<ElementId>(r, no_element));
  for (std::size_t e = 0; e < g.elements.size(); ++e)
    for (int s = 0; s < r; ++s) {
      Eigen::MatrixXd prod = gens[s] * g.elements[e].matrix;
      if (auto id = g.find(prod)) g.left[e][s] = *id;
    }
  return g;
}

Calculus element_calculus(const ChamberGraph& g, std::span<const int> word) {
  for (int s : word)
    if (s < 0 || s >= g.rank)
      throw ValidationError(ValidationError::Code::BadSubset,
                            "word letter out of range");
  ElementId id = g.walk(0, word);
  if (id == no_element)
    throw ComputationError("word walks outside an incomplete graph");
  Calculus c{id, g.elements[id].length, std::vector<bool>(g.rank, false)};
  for (int s = 0; s < g.rank; ++s) {
    ElementId sg = g.left[id][s];
    // A missing left product lies outside the enumerated ball, hence is longer.
    c.in_p_plus[s] = sg == no_element || g.elements[sg].length > c.length;
  }
  return c;
}

std::optional<int> order_of_element(const ChamberGraph& g, ElementId e) {
  if (e < 0 || e >= static_cast<ElementId>(g.elements.size()))
    throw std::out_of_range("element id");
  const auto& word = g.elements[e].word;
  ElementId cur = e;
  int k = 1;
  while (cur != 0) {
    cur = g.walk(cur, word);
    if (cur == no_element) return std::nullopt;
    ++k;
    // The first repeated power of any element is the identity.
    if (k > static_cast<int>(g.elements.size()) + 1)
      throw std::logic_error("power walk failed to close");
  }
  return k;
}

BourbakiReport check_bourbaki(const ChamberGraph& g) {
  if (!g.complete)
    throw ComputationError("Bourbaki checks require a complete graph");
  std::vector<std::vector<bool>> p_plus(g.rank,
                                        std::vector<bool>(g.elements.size()));
  for (int s = 0; s < g.rank; ++s)
    for (std::size_t e = 0; e < g.elements.size(); ++e)
      p_plus[s][e] =
          g.elements[g.left[e][s]].length > g.elements[e].length;
  return check_bourbaki_sets(g, p_plus);
}

BourbakiReport check_bourbaki_sets(
    const ChamberGraph& g, const std::vector<std::vector<bool>>& p_plus) {
  if (!g.complete)
    throw ComputationError("Bourbaki checks require a complete graph");
  BourbakiReport report;
  const auto size = g.elements.size();

  auto word_str = [&](ElementId e) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < g.elements[e].word.size(); ++i)
      out << (i ? " " : "") << g.elements[e].word[i];
    out << ']';
    return out.str();
  };

  for (std::size_t e = 0; e < size; ++e) {
    bool in_all = true;
    for (int s = 0; s < g.rank && in_all; ++s) in_all = p_plus[s][e];
    if (in_all != (e == 0)) {
      report.intersection.pass = false;
      report.intersection.witnesses.push_back(word_str(static_cast<ElementId>(e)));
    }
  }

  for (int s = 0; s < g.rank; ++s)
    for (std::size_t e = 0; e < size; ++e) {
      ElementId se = g.left[e][s];
      if (p_plus[s][e] == p_plus[s][se]) {
        report.partition.pass = false;
        report.partition.witnesses.push_back("s=" + std::to_string(s) + " g=" +
                                             word_str(static_cast<ElementId>(e)));
      }
    }

  std::vector<int> reversed;
  for (std::size_t e = 0; e < size; ++e) {
    const auto& word = g.elements[e].word;
    reversed.assign(word.rbegin(), word.rend());
    for (int s = 0; s < g.rank; ++s) {
      if (!p_plus[s][e]) continue;
      for (int t = 0; t < g.rank; ++t) {
        ElementId gt = g.right[e][t];
        if (p_plus[s][gt]) continue;
        ElementId conj = g.walk(g.walk(static_cast<ElementId>(e), {&t, 1}),
                                reversed);
        if (conj != g.right[0][s]) {
          report.exchange.pass = false;
          report.exchange.witnesses.push_back(
              "s=" + std::to_string(s) + " s'=" + std::to_string(t) + " g=" +
              word_str(static_cast<ElementId>(e)));
        }
      }
    }
  }
  return report;
}

nlohmann::json graph_to_json(const ChamberGraph& g) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : g.elements)
    elements.push_back({{"word", e.word}, {"length", e.length}});
  return nlohmann::json{{"rank", g.rank},
                        {"size", g.elements.size()},
                        {"complete", g.complete},
                        {"max_length", g.max_length},
                        {"elements", std::move(elements)},
                        {"right", g.right},
                        {"left", g.left}};
}

std::string graph_to_dot(const ChamberGraph& g) {
  std::ostringstream out;
  out << "graph cayley {\n";
  for (std::size_t e = 0; e < g.elements.size(); ++e) out << "  e" << e << ";\n";
  for (std::size_t e = 0; e < g.elements.size(); ++e)
    for (int s = 0; s < g.rank; ++s) {
      ElementId to = g.right[e][s];
      if (to != no_element && to > static_cast<ElementId>(e))
        out << "  e" << e << " -- e" << to << " [label=\"" << s << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace cox
