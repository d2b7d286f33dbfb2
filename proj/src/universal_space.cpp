#include "cox/universal_space.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cox/classify.hpp"

namespace cox {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Elements of the standard parabolic on the generator subset, found by BFS
// over the right edges restricted to those generators.
std::vector<ElementId> parabolic_elements(const ChamberGraph& g,
                                          const std::vector<int>& gens) {
  std::vector<ElementId> out{0};
  std::set<ElementId> seen{0};
  for (std::size_t qi = 0; qi < out.size(); ++qi)
    for (int s : gens) {
      ElementId next = g.right[out[qi]][s];
      if (next == no_element)
        throw ComputationError(
            "ball radius too small to close a face subgroup");
      if (seen.insert(next).second) out.push_back(next);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CellComplex build_universal_space(const FacePoset& poset, const Equipment& eq,
                                  std::optional<int> ball_radius,
                                  std::size_t budget) {
  auto poset_report = validate_face_poset(poset);
  if (!poset_report.ok())
    throw ValidationError(ValidationError::Code::BadPoset,
                          "invalid poset: " + poset_report.errors.front());
  auto eq_report = validate_equipment(poset, eq);
  if (!eq_report.ok())
    throw ValidationError(ValidationError::Code::BadEquipment,
                          "invalid equipment: " + eq_report.errors.front());

  CellComplex cx{poset, eq, ChamberGraph(), {}, {}, {}, {}, {}, false, 0};

  auto report = classify_system(eq.matrix);
  if (report.verdict == Verdict::Finite) {
    BigCount order = report.order.value();
    if (order > BigCount{budget})
      throw ComputationError("group order " + decimal_string(order) +
                             " exceeds the enumeration budget");
    cx.graph = enumerate_group(eq.matrix, static_cast<std::size_t>(order));
    cx.truncated = false;
    cx.ball_radius = cx.graph.max_length;
  } else {
    if (!ball_radius.has_value())
      throw ValidationError(ValidationError::Code::BadEquipment,
                            "infinite group needs a ball radius");
    cx.graph = enumerate_group(eq.matrix, budget, *ball_radius);
    if (cx.graph.elements.size() >= budget)
      throw ComputationError("enumeration budget exhausted");
    cx.truncated = true;
    cx.ball_radius = *ball_radius;
  }
  const auto size = cx.graph.elements.size();

  int max_codim = 0;
  for (const auto& f : poset.faces) max_codim = std::max(max_codim, f.codim);

  // Parabolic element lists, cached by generator subset.
  std::map<std::vector<int>, std::vector<ElementId>> parabolics;
  std::vector<const std::vector<ElementId>*> face_parabolic(poset.faces.size());
  for (std::size_t f = 0; f < poset.faces.size(); ++f) {
    auto gens = eq.face_subset(poset, static_cast<int>(f)).indices;
    if (poset.faces[f].codim == 0) gens.clear();
    auto it = parabolics.find(gens);
    if (it == parabolics.end())
      it = parabolics.emplace(gens, parabolic_elements(cx.graph, gens)).first;
    face_parabolic[f] = &it->second;
  }

  cx.cell_of.assign(poset.faces.size(), std::vector<int>(size, -1));
  for (std::size_t f = 0; f < poset.faces.size(); ++f) {
    const Face& face = poset.faces[f];
    auto& slots = cx.cell_of[f];
    for (std::size_t g = 0; g < size; ++g) {
      if (slots[g] != -1) continue;
      Cell cell;
      cell.face = static_cast<int>(f);
      cell.rep = static_cast<ElementId>(g);
      cell.dim = poset.dimension - face.codim;
      bool coset_clipped = false;
      for (ElementId p : *face_parabolic[f]) {
        ElementId member =
            cx.graph.walk(static_cast<ElementId>(g), cx.graph.elements[p].word);
        if (member == no_element) {
          coset_clipped = true;
          continue;
        }
        slots[member] = static_cast<int>(cx.cells.size());
      }
      cell.boundary =
          cx.truncated &&
          (coset_clipped ||
           cx.graph.elements[g].length >= cx.ball_radius - max_codim);
      cx.cells.push_back(cell);
    }
  }

  cx.chamber_cell_of_element.assign(size, -1);
  const int chamber = poset.chamber_face();
  for (std::size_t g = 0; g < size; ++g)
    cx.chamber_cell_of_element[g] = cx.cell_of[chamber][g];

  // Incidence: container faces have strictly fewer walls; a container cell is
  // incident when its coset meets the contained cell's coset.
  std::set<std::pair<int, int>> pairs;
  for (std::size_t fb = 0; fb < poset.faces.size(); ++fb) {
    std::vector<std::size_t> containers;
    for (std::size_t fa = 0; fa < poset.faces.size(); ++fa)
      if (fa != fb && poset.faces[fa].walls != poset.faces[fb].walls &&
          FacePoset::contained_in(poset.faces[fb], poset.faces[fa]))
        containers.push_back(fa);
    if (containers.empty()) continue;
    for (std::size_t g = 0; g < size; ++g) {
      int b = cx.cell_of[fb][g];
      for (std::size_t fa : containers) {
        int a = cx.cell_of[fa][g];
        pairs.emplace(a, b);
      }
    }
  }
  cx.incidence.assign(pairs.begin(), pairs.end());

  for (int w = 0; w < poset.wall_count; ++w) {
    int wall_face = -1;
    for (std::size_t f = 0; f < poset.faces.size(); ++f)
      if (poset.faces[f].codim == 1 && poset.faces[f].walls == std::vector<int>{w})
        wall_face = static_cast<int>(f);
    int t = eq.wall_to_generator[static_cast<std::size_t>(w)];
    for (std::size_t g = 0; g < size; ++g) {
      ElementId other = cx.graph.right[g][t];
      if (other == no_element || other < static_cast<ElementId>(g)) continue;
      cx.crossings.push_back({cx.cell_of[wall_face][g], static_cast<ElementId>(g),
                              other, w});
    }
  }
  return cx;
}

ManifoldReport check_manifold_and_action(const CellComplex& cx) {
  ManifoldReport report;
  const auto size = cx.graph.elements.size();
  const int rank = cx.graph.rank;

  // (a) interior wall cells meet exactly two chambers.
  std::vector<int> chamber_hits(cx.cells.size(), 0);
  for (const auto& [a, b] : cx.incidence)
    if (cx.cells[static_cast<std::size_t>(a)].dim == cx.poset.dimension)
      ++chamber_hits[static_cast<std::size_t>(b)];
  for (std::size_t c = 0; c < cx.cells.size(); ++c) {
    const Cell& cell = cx.cells[c];
    if (cell.boundary) continue;
    if (cx.poset.faces[static_cast<std::size_t>(cell.face)].codim != 1) continue;
    if (chamber_hits[c] != 2) {
      report.wall_cells.pass = false;
      report.wall_cells.witnesses.push_back(
          "wall cell " + std::to_string(c) + " meets " +
          std::to_string(chamber_hits[c]) + " chambers");
    }
  }

  // (b) generator action: well-defined and free on interior chambers...
  auto interior = [&](std::size_t g) {
    int cell = cx.chamber_cell_of_element[g];
    return !cx.cells[static_cast<std::size_t>(cell)].boundary;
  };
  for (int s = 0; s < rank; ++s)
    for (std::size_t g = 0; g < size; ++g) {
      if (!interior(g)) continue;
      ElementId sg = cx.graph.left[g][s];
      if (sg == no_element) {
        report.action_free.pass = false;
        report.action_free.witnesses.push_back(
            "generator " + std::to_string(s) + " undefined on chamber " +
            std::to_string(g));
      } else if (sg == static_cast<ElementId>(g)) {
        report.action_free.pass = false;
        report.action_free.witnesses.push_back(
            "generator " + std::to_string(s) + " fixes chamber " +
            std::to_string(g));
      }
    }
  if (!cx.truncated) {
    // ...and freeness for every group element, via left-multiplication tables
    // composed along shortlex words.
    std::vector<std::vector<ElementId>> perm(size);
    perm[0].resize(size);
    std::iota(perm[0].begin(), perm[0].end(), 0);
    for (std::size_t g = 1; g < size; ++g) {
      const auto& word = cx.graph.elements[g].word;
      std::vector<int> prefix(word.begin(), word.end() - 1);
      ElementId parent = cx.graph.walk(0, prefix);
      int s = word.back();
      // g = parent * s, so g.h = parent.(s.h).
      perm[g].resize(size);
      for (std::size_t h = 0; h < size; ++h)
        perm[g][h] = perm[parent][cx.graph.left[h][s]];
      for (std::size_t h = 0; h < size; ++h)
        if (perm[g][h] == static_cast<ElementId>(h)) {
          report.action_free.pass = false;
          report.action_free.witnesses.push_back(
              "element " + std::to_string(g) + " fixes chamber " +
              std::to_string(h));
          break;
        }
    }
  }

  // (b) transitivity: interior chambers reachable from the identity chamber.
  {
    std::vector<bool> seen(size, false);
    std::vector<ElementId> queue{0};
    seen[0] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (int s = 0; s < rank; ++s) {
        ElementId next = cx.graph.left[queue[qi]][s];
        if (next != no_element && !seen[static_cast<std::size_t>(next)]) {
          seen[static_cast<std::size_t>(next)] = true;
          queue.push_back(next);
        }
      }
    for (std::size_t g = 0; g < size; ++g)
      if (interior(g) && !seen[g]) {
        report.action_transitive.pass = false;
        report.action_transitive.witnesses.push_back(
            "chamber " + std::to_string(g) + " is not in the orbit");
      }
  }

  // (c) interior chamber-adjacency connectivity.
  {
    UnionFind uf(size);
    for (const auto& cr : cx.crossings) {
      if (cx.cells[static_cast<std::size_t>(cr.wall_cell)].boundary) continue;
      if (!interior(cr.a) || !interior(cr.b)) continue;
      uf.unite(cr.a, cr.b);
    }
    int root = -1;
    for (std::size_t g = 0; g < size; ++g) {
      if (!interior(g)) continue;
      if (root == -1) root = uf.find(static_cast<int>(g));
      if (uf.find(static_cast<int>(g)) != root) {
        report.connected.pass = false;
        report.connected.witnesses.push_back(
            "chamber " + std::to_string(g) + " is disconnected from the identity");
      }
    }
  }
  return report;
}

long long euler_characteristic(const CellComplex& cx) {
  if (cx.truncated)
    throw ComputationError(
        "Euler characteristic requires a complete build");
  long long chi = 0;
  for (const auto& cell : cx.cells) chi += (cell.dim % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<int> generator_dissection_counts(const CellComplex& cx) {
  if (cx.truncated)
    throw ComputationError("dissection counts require a complete build");
  const auto size = cx.graph.elements.size();
  std::vector<int> counts;
  for (int s = 0; s < cx.graph.rank; ++s) {
    UnionFind uf(size);
    for (const auto& cr : cx.crossings) {
      // The wall cell between a and b = a*t is fixed by s exactly when
      // s*a = a*t.
      if (cx.graph.left[cr.a][s] == cr.b) continue;
      uf.unite(cr.a, cr.b);
    }
    std::set<int> roots;
    for (std::size_t g = 0; g < size; ++g) roots.insert(uf.find(static_cast<int>(g)));
    counts.push_back(static_cast<int>(roots.size()));
  }
  return counts;
}

nlohmann::json complex_to_json(const CellComplex& cx) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : cx.cells)
    cells.push_back({{"face", cell.face},
                     {"rep_word", cx.graph.elements[cell.rep].word},
                     {"dim", cell.dim},
                     {"boundary", cell.boundary}});
  nlohmann::json counts = nlohmann::json::array();
  for (int d = 0; d <= cx.poset.dimension; ++d) {
    long long n = 0;
    for (const auto& cell : cx.cells)
      if (cell.dim == d) ++n;
    counts.push_back(n);
  }
  nlohmann::json out{{"cells", std::move(cells)},
                     {"cells_by_dim", std::move(counts)},
                     {"incidence", cx.incidence},
                     {"group_size", cx.graph.elements.size()},
                     {"truncated", cx.truncated}};
  if (!cx.truncated) out["euler_characteristic"] = euler_characteristic(cx);
  if (cx.truncated) out["ball_radius"] = cx.ball_radius;
  return out;
}

std::string adjacency_to_dot(const CellComplex& cx) {
  std::ostringstream out;
  out << "graph chambers {\n";
  for (std::size_t g = 0; g < cx.graph.elements.size(); ++g)
    out << "  c" << g << ";\n";
  for (const auto& cr : cx.crossings)
    out << "  c" << cr.a << " -- c" << cr.b << " [label=\"w" << cr.wall
        << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace cox
