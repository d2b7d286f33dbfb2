#include "cox/simplex_enum.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace cox {

std::string equipment_class_name(EquipmentClass c) {
  switch (c) {
    case EquipmentClass::Spherical: return "spherical";
    case EquipmentClass::Affine: return "affine";
    case EquipmentClass::HyperbolicType: return "hyperbolic-type";
  }
  return "?";
}

namespace {

// Upper-triangle encoding with infinity sorted after every finite bond.
std::vector<int> encode(const CoxeterMatrix& m, const std::vector<int>& perm) {
  std::vector<int> enc;
  const int r = m.rank();
  enc.reserve(static_cast<std::size_t>(r) * (r - 1) / 2);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      enc.push_back(m.at(perm[static_cast<std::size_t>(i)],
                         perm[static_cast<std::size_t>(j)])
                        .value_or(INT_MAX));
  return enc;
}

std::vector<int> canonical_key(const CoxeterMatrix& m) {
  std::vector<int> perm(static_cast<std::size_t>(m.rank()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = encode(m, perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    best = std::min(best, encode(m, perm));
  return best;
}

std::string key_string(const std::vector<int>& key) {
  std::ostringstream out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out << ',';
    if (key[i] == INT_MAX)
      out << "inf";
    else
      out << key[i];
  }
  return out.str();
}

CoxeterMatrix from_key(int rank, const std::vector<int>& key) {
  CoxeterMatrix m(rank);
  std::size_t pos = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j, ++pos)
      m.set(i, j, key[pos] == INT_MAX ? infinite_bond : BondOrder{key[pos]});
  return m;
}

bool satisfies_criterion(const CoxeterMatrix& m) {
  for (int drop = 0; drop < m.rank(); ++drop) {
    std::vector<int> keep;
    for (int i = 0; i < m.rank(); ++i)
      if (i != drop) keep.push_back(i);
    auto sub = restrict_to(m, GeneratorSubset{std::move(keep)});
    if (classify_system(sub.matrix).verdict != Verdict::Finite) return false;
  }
  return true;
}

}  // namespace

std::vector<SimplexEquipmentRecord> enumerate_simplex_equipments(
    int n, int m_max, bool allow_infinity) {
  if (n < 1)
    throw ValidationError(ValidationError::Code::BadPoset,
                          "simplex dimension must be >= 1");
  if (m_max < 2)
    throw ValidationError(ValidationError::Code::BadOffDiagonal,
                          "m_max must be >= 2");
  const int rank = n + 1;
  const std::size_t slots = static_cast<std::size_t>(rank) * (rank - 1) / 2;

  std::vector<int> options;
  for (int m = 2; m <= m_max; ++m) options.push_back(m);
  if (allow_infinity) options.push_back(INT_MAX);

  std::vector<SimplexEquipmentRecord> records;
  std::vector<int> key(slots, 0);
  auto sweep = [&](auto&& self, std::size_t slot) -> void {
    if (slot == slots) {
      CoxeterMatrix m = from_key(rank, key);
      if (canonical_key(m) != key) return;  // keep one member per class
      if (!satisfies_criterion(m)) return;
      SimplexEquipmentRecord rec{m, key_string(key), EquipmentClass::Spherical,
                                 classify_system(m)};
      switch (rec.report.verdict) {
        case Verdict::Finite:
          rec.cls = EquipmentClass::Spherical;
          break;
        case Verdict::Affine:
          rec.cls = EquipmentClass::Affine;
          break;
        default:
          rec.cls = EquipmentClass::HyperbolicType;
          break;
      }
      if (rec.cls != EquipmentClass::Spherical) {
        int infinite_components = 0;
        for (const auto& c : rec.report.components)
          if (!family_is_finite(c.family)) ++infinite_components;
        if (infinite_components != 1)
          throw std::logic_error(
              "every-maximal-parabolic-finite record with " +
              std::to_string(infinite_components) + " infinite components");
      }
      records.push_back(std::move(rec));
      return;
    }
    for (int option : options) {
      key[slot] = option;
      self(self, slot + 1);
    }
  };
  sweep(sweep, 0);

  std::sort(records.begin(), records.end(),
            [](const SimplexEquipmentRecord& a, const SimplexEquipmentRecord& b) {
              if (a.cls != b.cls) return a.cls < b.cls;
              return a.canonical_form < b.canonical_form;
            });
  return records;
}

nlohmann::json records_to_json(const std::vector<SimplexEquipmentRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rec : records) {
    nlohmann::json j{{"matrix", matrix_to_json(rec.matrix)},
                     {"canonical", rec.canonical_form},
                     {"class", equipment_class_name(rec.cls)},
                     {"classification", report_to_json(rec.report)}};
    out.push_back(std::move(j));
  }
  return nlohmann::json{{"records", std::move(out)}};
}

std::string records_to_csv(const std::vector<SimplexEquipmentRecord>& records) {
  std::ostringstream out;
  out << "class,canonical_form,components,order\n";
  for (const auto& rec : records) {
    out << equipment_class_name(rec.cls) << ",\"" << rec.canonical_form
        << "\",\"";
    for (std::size_t i = 0; i < rec.report.components.size(); ++i)
      out << (i ? " x " : "") << rec.report.components[i].name();
    out << "\",";
    if (rec.report.order) out << decimal_string(*rec.report.order);
    out << "\n";
  }
  return out.str();
}

}  // namespace cox
