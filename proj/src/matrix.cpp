#include "cox/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace cox {

namespace {

void check_entry(BondOrder m, bool diagonal) {
  if (diagonal) {
    if (m != BondOrder{1})
      throw ValidationError(ValidationError::Code::BadDiagonal,
                            "diagonal entries must be 1");
    return;
  }
  if (m.has_value() && *m < 2)
    throw ValidationError(ValidationError::Code::BadOffDiagonal,
                          "off-diagonal entries must be >= 2 or infinite");
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(int rank) : rank_(rank) {
  if (rank < 1)
    throw ValidationError(ValidationError::Code::NotSquare, "rank must be >= 1");
  m_.assign(static_cast<std::size_t>(rank) * rank, BondOrder{2});
  for (int i = 0; i < rank; ++i) m_[idx(i, i)] = 1;
}

std::size_t CoxeterMatrix::idx(int i, int j) const {
  if (i < 0 || j < 0 || i >= rank_ || j >= rank_)
    throw std::out_of_range("matrix index");
  return static_cast<std::size_t>(i) * rank_ + j;
}

void CoxeterMatrix::set(int i, int j, BondOrder m) {
  check_entry(m, i == j);
  m_[idx(i, j)] = m;
  m_[idx(j, i)] = m;
}

CoxeterMatrix CoxeterMatrix::parse(std::string_view text) {
  std::vector<std::vector<BondOrder>> rows;
  std::vector<BondOrder> row;
  std::string token;
  auto flush_token = [&] {
    if (token.empty()) return;
    int value = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || p != token.data() + token.size() || value < 0)
      throw ValidationError(ValidationError::Code::BadToken,
                            "bad entry '" + token + "'");
    row.push_back(value == 0 ? infinite_bond : BondOrder{value});
    token.clear();
  };
  auto flush_row = [&] {
    flush_token();
    if (!row.empty()) rows.push_back(std::move(row));
    row.clear();
  };
  for (char c : text) {
    if (c == ';' || c == '\n')
      flush_row();
    else if (c == ' ' || c == '\t' || c == '\r' || c == ',')
      flush_token();
    else
      token.push_back(c);
  }
  flush_row();

  if (rows.empty())
    throw ValidationError(ValidationError::Code::Empty, "empty matrix text");
  const int rank = static_cast<int>(rows.size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != rank)
      throw ValidationError(ValidationError::Code::RaggedRows,
                            "rows must all have length equal to the row count");

  CoxeterMatrix m(rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      check_entry(rows[i][j], i == j);
      if (rows[i][j] != rows[j][i])
        throw ValidationError(ValidationError::Code::NotSymmetric,
                              "matrix must be symmetric");
      if (i != j) m.set(i, j, rows[i][j]);
    }
  return m;
}

std::string CoxeterMatrix::serialize() const {
  std::ostringstream out;
  for (int i = 0; i < rank_; ++i) {
    if (i) out << "; ";
    for (int j = 0; j < rank_; ++j) {
      if (j) out << ' ';
      out << at(i, j).value_or(0);
    }
  }
  return out.str();
}

BondOrder CoxeterDiagram::label(int a, int b) const {
  for (const auto& e : edges)
    if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e.label;
  return 2;
}

CoxeterDiagram diagram_of(const CoxeterMatrix& m) {
  CoxeterDiagram d;
  d.rank = m.rank();
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j) {
      BondOrder b = m.at(i, j);
      if (!b.has_value() || *b >= 3) d.edges.push_back({i, j, b});
    }
  return d;
}

CoxeterMatrix matrix_of(const CoxeterDiagram& d) {
  CoxeterMatrix m(d.rank);
  for (const auto& e : d.edges) m.set(e.a, e.b, e.label);
  return m;
}

GeneratorSubset GeneratorSubset::of(std::vector<int> indices, int rank) {
  std::sort(indices.begin(), indices.end());
  if (indices.empty())
    throw ValidationError(ValidationError::Code::BadSubset, "empty subset");
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw ValidationError(ValidationError::Code::BadSubset, "duplicate index");
  if (indices.front() < 0 || indices.back() >= rank)
    throw ValidationError(ValidationError::Code::BadSubset, "index out of range");
  return GeneratorSubset{std::move(indices)};
}

bool GeneratorSubset::contains(int i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

Restriction restrict_to(const CoxeterMatrix& m, const GeneratorSubset& s) {
  GeneratorSubset checked = GeneratorSubset::of(s.indices, m.rank());
  const int r = static_cast<int>(checked.indices.size());
  CoxeterMatrix sub(r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      sub.set(i, j, m.at(checked.indices[i], checked.indices[j]));
  return Restriction{std::move(sub), std::move(checked.indices)};
}

std::vector<DiagramComponent> connected_components(const CoxeterDiagram& d) {
  std::vector<int> comp(d.rank, -1);
  std::vector<std::vector<int>> adj(d.rank);
  for (const auto& e : d.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  int n_comp = 0;
  for (int v = 0; v < d.rank; ++v) {
    if (comp[v] != -1) continue;
    std::vector<int> stack{v};
    comp[v] = n_comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (comp[w] == -1) {
          comp[w] = n_comp;
          stack.push_back(w);
        }
    }
    ++n_comp;
  }

  std::vector<DiagramComponent> out(n_comp);
  for (int c = 0; c < n_comp; ++c) {
    for (int v = 0; v < d.rank; ++v)
      if (comp[v] == c) out[c].vertex_map.push_back(v);
    out[c].diagram.rank = static_cast<int>(out[c].vertex_map.size());
  }
  for (const auto& e : d.edges) {
    auto& target = out[comp[e.a]];
    auto local = [&](int v) {
      return static_cast<int>(std::lower_bound(target.vertex_map.begin(),
                                               target.vertex_map.end(), v) -
                              target.vertex_map.begin());
    };
    int a = local(e.a), b = local(e.b);
    target.diagram.edges.push_back({std::min(a, b), std::max(a, b), e.label});
  }
  return out;
}

namespace {

// Multiset of incident edge labels, infinity sorted last.
std::vector<std::pair<int, int>> vertex_signature(const CoxeterDiagram& d, int v) {
  std::vector<std::pair<int, int>> sig;
  for (const auto& e : d.edges)
    if (e.a == v || e.b == v)
      sig.emplace_back(e.label.has_value() ? 0 : 1, e.label.value_or(0));
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace

std::optional<std::vector<int>> diagrams_isomorphic(const CoxeterDiagram& d1,
                                                    const CoxeterDiagram& d2,
                                                    int rank_cap) {
  if (d1.rank != d2.rank) return std::nullopt;
  if (d1.rank > rank_cap)
    throw ValidationError(ValidationError::Code::RankCap,
                          "rank exceeds the isomorphism cap");
  const int n = d1.rank;

  std::vector<std::vector<std::pair<int, int>>> sig1(n), sig2(n);
  for (int v = 0; v < n; ++v) {
    sig1[v] = vertex_signature(d1, v);
    sig2[v] = vertex_signature(d2, v);
  }
  {
    auto a = sig1, b = sig2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  // Assign images of 0,1,2,... picking the least feasible target first; the
  // first complete assignment is therefore the lexicographically least one.
  auto extend = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || sig1[v] != sig2[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (d1.label(u, v) != d2.label(image[u], w)) ok = false;
      if (!ok) continue;
      image[v] = w;
      used[w] = true;
      if (self(self, v + 1)) return true;
      image[v] = -1;
      used[w] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return image;
}

std::string to_dot(const CoxeterDiagram& d) {
  std::ostringstream out;
  out << "graph coxeter {\n";
  for (int v = 0; v < d.rank; ++v) out << "  s" << v << ";\n";
  for (const auto& e : d.edges) {
    out << "  s" << e.a << " -- s" << e.b;
    if (!e.label.has_value())
      out << " [label=\"inf\"]";
    else if (*e.label >= 4)
      out << " [label=\"" << *e.label << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json matrix_to_json(const CoxeterMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.rank(); ++j) row.push_back(m.at(i, j).value_or(0));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"rank", m.rank()}, {"entries", std::move(rows)}};
}

CoxeterMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw ValidationError(ValidationError::Code::BadToken,
                          "matrix JSON needs an 'entries' array");
  const auto& rows = j["entries"];
  std::ostringstream text;
  for (const auto& row : rows) {
    if (!row.is_array())
      throw ValidationError(ValidationError::Code::BadToken,
                            "matrix rows must be arrays");
    for (const auto& v : row) {
      if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ValidationError(ValidationError::Code::BadToken,
                              "matrix entries must be integers");
      text << v.get<long long>() << ' ';
    }
    text << ';';
  }
  CoxeterMatrix m = CoxeterMatrix::parse(text.str());
  if (j.contains("rank") && j["rank"].get<int>() != m.rank())
    throw ValidationError(ValidationError::Code::NotSquare,
                          "declared rank disagrees with entries");
  return m;
}

nlohmann::json diagram_to_json(const CoxeterDiagram& d) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : d.edges)
    edges.push_back({{"a", e.a}, {"b", e.b}, {"m", e.label.value_or(0)}});
  return nlohmann::json{{"vertices", d.rank}, {"edges", std::move(edges)}};
}

}  // namespace cox
