#include "cox/chamber.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "cox/classify.hpp"

namespace cox {

int FacePoset::chamber_face() const {
  int found = -1;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].codim == 0) {
      if (found != -1) return -1;
      found = static_cast<int>(i);
    }
  return found;
}

std::vector<int> FacePoset::faces_of_codim(int codim) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].codim == codim) out.push_back(static_cast<int>(i));
  return out;
}

bool FacePoset::contained_in(const Face& f, const Face& g) {
  return std::includes(f.walls.begin(), f.walls.end(), g.walls.begin(),
                       g.walls.end());
}

FacePoset simplex_poset(int n) {
  if (n < 1) throw ValidationError(ValidationError::Code::BadPoset,
                                   "simplex dimension must be >= 1");
  FacePoset p;
  p.dimension = n;
  p.wall_count = n + 1;
  // All wall subsets of size 0..n; the full set is empty in the simplex.
  for (int size = 0; size <= n; ++size) {
    std::vector<int> pick(size);
    auto emit = [&](auto&& self, int start, int depth) -> void {
      if (depth == size) {
        p.faces.push_back({pick, size});
        return;
      }
      for (int w = start; w <= n; ++w) {
        pick[depth] = w;
        self(self, w + 1, depth + 1);
      }
    };
    emit(emit, 0, 0);
  }
  return p;
}

FacePoset cube_poset(int k) {
  if (k < 1) throw ValidationError(ValidationError::Code::BadPoset,
                                   "cube dimension must be >= 1");
  FacePoset p;
  p.dimension = k;
  p.wall_count = 2 * k;
  // Walls 2a and 2a+1 are the opposite pair on axis a; faces pick at most one
  // wall per axis.
  std::vector<int> pick;
  auto emit = [&](auto&& self, int axis) -> void {
    if (axis == k) {
      p.faces.push_back({pick, static_cast<int>(pick.size())});
      return;
    }
    self(self, axis + 1);
    for (int side = 0; side < 2; ++side) {
      pick.push_back(2 * axis + side);
      self(self, axis + 1);
      pick.pop_back();
    }
  };
  emit(emit, 0);
  for (auto& f : p.faces) std::sort(f.walls.begin(), f.walls.end());
  std::sort(p.faces.begin(), p.faces.end(), [](const Face& a, const Face& b) {
    if (a.codim != b.codim) return a.codim < b.codim;
    return a.walls < b.walls;
  });
  return p;
}

FacePoset interval_poset() { return simplex_poset(1); }

CheckReport validate_face_poset(const FacePoset& p) {
  CheckReport report;
  auto err = [&](std::string msg) { report.errors.push_back(std::move(msg)); };

  if (p.dimension < 1) err("dimension must be >= 1");
  if (p.wall_count < 1) err("wall count must be >= 1");

  int chambers = 0;
  std::vector<int> wall_faces(std::max(p.wall_count, 0), 0);
  for (std::size_t i = 0; i < p.faces.size(); ++i) {
    const Face& f = p.faces[i];
    if (!std::is_sorted(f.walls.begin(), f.walls.end()) ||
        std::adjacent_find(f.walls.begin(), f.walls.end()) != f.walls.end()) {
      err("face " + std::to_string(i) + " wall set must be sorted and unique");
      continue;
    }
    if (!f.walls.empty() &&
        (f.walls.front() < 0 || f.walls.back() >= p.wall_count))
      err("face " + std::to_string(i) + " refers to an unknown wall");
    if (f.codim != static_cast<int>(f.walls.size()))
      err("face " + std::to_string(i) + " has codimension " +
          std::to_string(f.codim) + " but lies in " +
          std::to_string(f.walls.size()) + " walls");
    if (f.codim > p.dimension)
      err("face " + std::to_string(i) + " exceeds the chamber dimension");
    if (f.codim == 0) ++chambers;
    if (f.codim == 1 && f.walls.size() == 1 &&
        f.walls.front() >= 0 && f.walls.front() < p.wall_count)
      ++wall_faces[f.walls.front()];
  }

  if (chambers != 1) err("expected exactly one codimension-0 face");
  for (int w = 0; w < p.wall_count; ++w)
    if (wall_faces[w] != 1)
      err("wall " + std::to_string(w) + " must have exactly one codimension-1 face");

  // Downward closure: the chamber and the codimension-1 face of every wall
  // referenced by a declared face must themselves be declared.
  std::set<std::vector<int>> declared;
  for (const auto& f : p.faces) declared.insert(f.walls);
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    for (int w : p.faces[i].walls)
      if (!declared.count({w}))
        err("face " + std::to_string(i) + " lies in wall " + std::to_string(w) +
            " whose codimension-1 face is not declared");

  return report;
}

GeneratorSubset Equipment::face_subset(const FacePoset& p, int face) const {
  const Face& f = p.faces.at(static_cast<std::size_t>(face));
  std::set<int> gens;
  for (int w : f.walls) gens.insert(wall_to_generator.at(static_cast<std::size_t>(w)));
  return GeneratorSubset{std::vector<int>(gens.begin(), gens.end())};
}

CheckReport validate_equipment(const FacePoset& p, const Equipment& eq) {
  CheckReport report;
  auto err = [&](std::string msg) { report.errors.push_back(std::move(msg)); };

  if (static_cast<int>(eq.wall_to_generator.size()) != p.wall_count) {
    err("wall map must assign a generator to every wall");
    return report;
  }
  std::vector<bool> hit(static_cast<std::size_t>(eq.matrix.rank()), false);
  for (std::size_t w = 0; w < eq.wall_to_generator.size(); ++w) {
    int s = eq.wall_to_generator[w];
    if (s < 0 || s >= eq.matrix.rank()) {
      err("wall " + std::to_string(w) + " maps outside the generator set");
      return report;
    }
    hit[static_cast<std::size_t>(s)] = true;
  }
  for (std::size_t s = 0; s < hit.size(); ++s)
    if (!hit[s]) err("generator " + std::to_string(s) + " is missed by the wall map");

  for (std::size_t i = 0; i < p.faces.size(); ++i) {
    if (p.faces[i].codim < 1) continue;
    auto subset = eq.face_subset(p, static_cast<int>(i));
    auto sub = restrict_to(eq.matrix, subset);
    if (classify_system(sub.matrix).verdict != Verdict::Finite)
      err("face " + std::to_string(i) + " generates an infinite subgroup");
  }

  // Order reversal of the face map: containment of faces must reverse to
  // containment of generator subsets.
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    for (std::size_t j = 0; j < p.faces.size(); ++j) {
      if (i == j) continue;
      if (!FacePoset::contained_in(p.faces[i], p.faces[j])) continue;
      auto si = eq.face_subset(p, static_cast<int>(i)).indices;
      auto sj = eq.face_subset(p, static_cast<int>(j)).indices;
      if (!std::includes(si.begin(), si.end(), sj.begin(), sj.end()))
        err("face map fails to reverse containment between faces " +
            std::to_string(i) + " and " + std::to_string(j));
    }
  return report;
}

Equipment universal_equipment(const FacePoset& p, const AngleLabels& labels) {
  auto poset_report = validate_face_poset(p);
  if (!poset_report.ok())
    throw ValidationError(ValidationError::Code::BadPoset,
                          "invalid poset: " + poset_report.errors.front());

  for (const auto& [face, n] : labels.by_face) {
    if (face < 0 || face >= static_cast<int>(p.faces.size()) ||
        p.faces[static_cast<std::size_t>(face)].codim != 2)
      throw ValidationError(ValidationError::Code::BadEquipment,
                            "label attached to a non codimension-2 face");
    if (n < 2)
      throw ValidationError(ValidationError::Code::BadEquipment,
                            "angle labels must be >= 2");
  }
  for (int f : p.faces_of_codim(2))
    if (!labels.by_face.count(f))
      throw ValidationError(ValidationError::Code::BadEquipment,
                            "codimension-2 face " + std::to_string(f) +
                                " carries no angle label");

  Equipment eq{CoxeterMatrix(p.wall_count), {}};
  eq.wall_to_generator.resize(static_cast<std::size_t>(p.wall_count));
  for (int w = 0; w < p.wall_count; ++w)
    eq.wall_to_generator[static_cast<std::size_t>(w)] = w;

  // Bond orders from shared codimension-2 faces; walls sharing several such
  // faces must carry one label.
  std::map<std::pair<int, int>, int> bonds;
  for (int f : p.faces_of_codim(2)) {
    const auto& walls = p.faces[static_cast<std::size_t>(f)].walls;
    auto key = std::make_pair(walls[0], walls[1]);
    int n = labels.by_face.at(f);
    auto [it, inserted] = bonds.emplace(key, n);
    if (!inserted && it->second != n)
      throw ValidationError(ValidationError::Code::BadEquipment,
                            "walls " + std::to_string(key.first) + "," +
                                std::to_string(key.second) +
                                " share faces with different labels");
  }
  for (int i = 0; i < p.wall_count; ++i)
    for (int j = i + 1; j < p.wall_count; ++j) {
      auto it = bonds.find({i, j});
      eq.matrix.set(i, j, it == bonds.end() ? infinite_bond : BondOrder{it->second});
    }

  auto eq_report = validate_equipment(p, eq);
  if (!eq_report.ok())
    throw ValidationError(ValidationError::Code::BadEquipment,
                          eq_report.errors.front());
  return eq;
}

CheckReport is_admissible(const FacePoset& p, const AngleLabels& labels,
                          const Equipment& eq) {
  CheckReport report;
  for (const auto& [face, n] : labels.by_face) {
    const auto& walls = p.faces.at(static_cast<std::size_t>(face)).walls;
    if (walls.size() != 2) continue;
    int si = eq.wall_to_generator.at(static_cast<std::size_t>(walls[0]));
    int sj = eq.wall_to_generator.at(static_cast<std::size_t>(walls[1]));
    if (si == sj) {
      report.errors.push_back("face " + std::to_string(face) +
                              ": both walls carry generator " +
                              std::to_string(si));
      continue;
    }
    if (eq.matrix.at(si, sj) != BondOrder{n})
      report.errors.push_back(
          "face " + std::to_string(face) + ": generators " +
          std::to_string(si) + "," + std::to_string(sj) +
          " have bond order " +
          std::to_string(eq.matrix.at(si, sj).value_or(0)) +
          " but the label says " + std::to_string(n));
  }
  return report;
}

Equipment natural_simplex_equipment(const CoxeterMatrix& m) {
  Equipment eq{m, {}};
  eq.wall_to_generator.resize(static_cast<std::size_t>(m.rank()));
  for (int i = 0; i < m.rank(); ++i)
    eq.wall_to_generator[static_cast<std::size_t>(i)] = i;
  return eq;
}

nlohmann::json poset_to_json(const FacePoset& p) {
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : p.faces)
    faces.push_back({{"walls", f.walls}, {"codim", f.codim}});
  return nlohmann::json{{"dimension", p.dimension},
                        {"walls", p.wall_count},
                        {"faces", std::move(faces)}};
}

FacePoset poset_from_json(const nlohmann::json& j) {
  FacePoset p;
  try {
    p.dimension = j.at("dimension").get<int>();
    p.wall_count = j.at("walls").get<int>();
    for (const auto& jf : j.at("faces")) {
      Face f;
      f.walls = jf.at("walls").get<std::vector<int>>();
      std::sort(f.walls.begin(), f.walls.end());
      f.codim = jf.contains("codim") ? jf.at("codim").get<int>()
                                     : static_cast<int>(f.walls.size());
      p.faces.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ValidationError::Code::BadPoset,
                          std::string("poset JSON: ") + e.what());
  }
  return p;
}

nlohmann::json labels_to_json(const AngleLabels& labels) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [face, n] : labels.by_face)
    out.push_back({{"face", face}, {"n", n}});
  return nlohmann::json{{"labels", std::move(out)}};
}

AngleLabels labels_from_json(const nlohmann::json& j) {
  AngleLabels labels;
  try {
    for (const auto& jl : j.at("labels"))
      labels.by_face[jl.at("face").get<int>()] = jl.at("n").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ValidationError::Code::BadEquipment,
                          std::string("labels JSON: ") + e.what());
  }
  return labels;
}

nlohmann::json equipment_to_json(const Equipment& eq) {
  return nlohmann::json{{"matrix", matrix_to_json(eq.matrix)},
                        {"wall_map", eq.wall_to_generator}};
}

Equipment equipment_from_json(const nlohmann::json& j) {
  try {
    return Equipment{matrix_from_json(j.at("matrix")),
                     j.at("wall_map").get<std::vector<int>>()};
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ValidationError::Code::BadEquipment,
                          std::string("equipment JSON: ") + e.what());
  }
}

}  // namespace cox
