#include "cox/flat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cox {

namespace {

constexpr double kGeomTol = 1e-6;  // orbit coincidence / Hausdorff acceptance

std::array<double, 6> iso_entries(const Isometry2& g) {
  return {g.a(0, 0), g.a(0, 1), g.a(1, 0), g.a(1, 1), g.t(0), g.t(1)};
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  return h * 1099511628211ULL;
}

std::uint64_t iso_hash(const std::array<double, 6>& e) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double x : e) {
    auto q = static_cast<std::int64_t>(std::llround(x / kHashQuantum));
    h = fnv_mix(h, std::bit_cast<std::uint64_t>(q));
  }
  return h;
}

bool iso_close(const Isometry2& g, const Isometry2& h) {
  auto a = iso_entries(g), b = iso_entries(h);
  for (int i = 0; i < 6; ++i)
    if (std::abs(a[i] - b[i]) > kMatrixTol) return false;
  return true;
}

// ---- exact rational helpers ----

long long rat_floor(const Rat& r) {
  long long n = r.numerator(), d = r.denominator();  // d > 0 by normalization
  long long q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

bool rat_is_int(const Rat& r) { return r.denominator() == 1; }

std::optional<Rat> rationalize(double x, long long maxden, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (std::abs(fl) > 9e17) break;
    auto a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > maxden || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(x - approx) <= tol) return Rat(p1, q1);
    double rem = v - fl;
    if (rem < 1e-15) break;
    v = 1.0 / rem;
  }
  return std::nullopt;
}

double rat_to_double(const Rat& r) { return boost::rational_cast<double>(r); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// ---- exact convex polygon machinery in the fundamental cell ----

using RPoly = std::vector<RatVec2>;

Rat line_value(long long a1, long long a2, const RatVec2& v) {
  return Rat(a1) * v.x + Rat(a2) * v.y;
}

Rat poly_area2(const RPoly& p) {
  Rat s(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const RatVec2& v = p[i];
    const RatVec2& w = p[(i + 1) % p.size()];
    s += v.x * w.y - w.x * v.y;
  }
  return s;  // twice the signed area
}

void dedup_poly(RPoly& p) {
  RPoly out;
  for (const RatVec2& v : p)
    if (out.empty() || !(out.back() == v)) out.push_back(v);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  p = std::move(out);
}

// Splits along a1 x + a2 y = q; left entry keeps the >= side. A polygon fully
// on one side comes back on that side alone.
std::pair<std::optional<RPoly>, std::optional<RPoly>> split_poly(const RPoly& poly,
                                                                 long long a1,
                                                                 long long a2,
                                                                 const Rat& q) {
  std::size_t n = poly.size();
  std::vector<Rat> d(n);
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = line_value(a1, a2, poly[i]) - q;
    if (d[i] > Rat(0)) pos = true;
    if (d[i] < Rat(0)) neg = true;
  }
  if (!neg) return {poly, std::nullopt};
  if (!pos) return {std::nullopt, poly};
  RPoly P, N;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    if (d[i] >= Rat(0)) P.push_back(poly[i]);
    if (d[i] <= Rat(0)) N.push_back(poly[i]);
    if ((d[i] > Rat(0) && d[j] < Rat(0)) || (d[i] < Rat(0) && d[j] > Rat(0))) {
      Rat s = d[i] / (d[i] - d[j]);
      RatVec2 x{poly[i].x + s * (poly[j].x - poly[i].x),
                poly[i].y + s * (poly[j].y - poly[i].y)};
      P.push_back(x);
      N.push_back(x);
    }
  }
  dedup_poly(P);
  dedup_poly(N);
  std::optional<RPoly> op, on;
  if (P.size() >= 3 && poly_area2(P) != Rat(0)) op = std::move(P);
  if (N.size() >= 3 && poly_area2(N) != Rat(0)) on = std::move(N);
  return {op, on};
}

RatVec2 poly_centroid(const RPoly& p) {
  Rat sx(0), sy(0);
  for (const RatVec2& v : p) {
    sx += v.x;
    sy += v.y;
  }
  auto n = static_cast<long long>(p.size());
  return {sx / n, sy / n};
}

bool poly_contains(const RPoly& p, const RatVec2& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const RatVec2& v = p[i];
    const RatVec2& w = p[(i + 1) % p.size()];
    Rat cross = (w.x - v.x) * (q.y - v.y) - (w.y - v.y) * (q.x - v.x);
    if (cross < Rat(0)) return false;  // counter-clockwise polygons
  }
  return true;
}

bool ratvec_less(const RatVec2& a, const RatVec2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

struct EdgeKey {
  RatVec2 a, b;
  bool operator<(const EdgeKey& o) const {
    if (!(a == o.a)) return ratvec_less(a, o.a);
    return ratvec_less(b, o.b);
  }
};

// ---- lattice-coordinate isometries ----

RatVec2 frac_vec(const RatVec2& v) { return {rat_frac(v.x), rat_frac(v.y)}; }

TorusIsometry torus_compose(const TorusIsometry& g, const TorusIsometry& h) {
  TorusIsometry r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.b[i][j] = g.b[i][0] * h.b[0][j] + g.b[i][1] * h.b[1][j];
  RatVec2 bu{Rat(g.b[0][0]) * h.u.x + Rat(g.b[0][1]) * h.u.y,
             Rat(g.b[1][0]) * h.u.x + Rat(g.b[1][1]) * h.u.y};
  r.u = frac_vec({bu.x + g.u.x, bu.y + g.u.y});
  return r;
}

bool torus_is_identity(const TorusIsometry& g) {
  return g.b[0][0] == 1 && g.b[0][1] == 0 && g.b[1][0] == 0 && g.b[1][1] == 1 &&
         g.u.x == Rat(0) && g.u.y == Rat(0);
}

long long torus_det(const TorusIsometry& g) {
  return g.b[0][0] * g.b[1][1] - g.b[0][1] * g.b[1][0];
}

using TorusKey = std::array<long long, 8>;

TorusKey torus_key(const TorusIsometry& g) {
  return {g.b[0][0], g.b[0][1], g.b[1][0], g.b[1][1],
          g.u.x.numerator(), g.u.x.denominator(),
          g.u.y.numerator(), g.u.y.denominator()};
}

// Fixed set of an involutive orientation-reversing lattice isometry, as
// circles {a . x = c mod 1}. Empty for glides.
std::vector<MirrorCircle> fixed_circles(const TorusIsometry& g) {
  long long m[2][2] = {{1 - g.b[0][0], -g.b[0][1]}, {-g.b[1][0], 1 - g.b[1][1]}};
  long long r1[2] = {m[0][0], m[0][1]};
  long long r2[2] = {m[1][0], m[1][1]};
  const long long* base = (r1[0] != 0 || r1[1] != 0) ? r1 : r2;
  long long gg = std::gcd(std::abs(base[0]), std::abs(base[1]));
  long long a1 = base[0] / gg, a2 = base[1] / gg;
  // rows are integer multiples of (a1, a2)
  auto mult_of = [&](const long long* row) -> long long {
    if (a1 != 0) return row[0] / a1;
    return row[1] / a2;
  };
  long long alpha = mult_of(r1), beta = mult_of(r2);
  if (alpha * a1 != r1[0] || alpha * a2 != r1[1] || beta * a1 != r2[0] ||
      beta * a2 != r2[1])
    throw std::logic_error("rank-one fixed-line system has inconsistent rows");

  std::vector<Rat> values;
  if (alpha == 0) {
    if (g.u.x != Rat(0)) return {};
    if (beta == 0) throw std::logic_error("vanishing fixed-line system");
    for (long long k = 0; k < std::abs(beta); ++k)
      values.push_back((g.u.y + Rat(k)) / beta);
  } else {
    for (long long k = 0; k < std::abs(alpha); ++k) {
      Rat v = (g.u.x + Rat(k)) / alpha;
      if (rat_frac(Rat(beta) * v - g.u.y) == Rat(0)) values.push_back(v);
    }
  }

  std::vector<MirrorCircle> out;
  for (const Rat& v : values) {
    long long ca1 = a1, ca2 = a2;
    Rat c = v;
    if (ca1 < 0 || (ca1 == 0 && ca2 < 0)) {
      ca1 = -ca1;
      ca2 = -ca2;
      c = -c;
    }
    out.push_back({ca1, ca2, rat_frac(c)});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Isometry2 line_reflection(const Line2& line) {
  Eigen::Vector2d d = line.direction.normalized();
  Eigen::Vector2d n(-d.y(), d.x());
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity() - 2.0 * n * n.transpose();
  return {a, 2.0 * n.dot(line.point) * n};
}

constexpr long long kMaxDenominator = 4096;

Rat rationalize_or_throw(double x, const char* what) {
  auto r = rationalize(x, kMaxDenominator, 1e-7);
  if (!r)
    throw ValidationError(ValidationError::Code::BadScene,
                          std::string(what) + " is not rational within tolerance");
  return *r;
}

// Shared arrangement step: cuts the seed polygons along every listed line
// (all mod-1 translates in torus mode) and returns the pieces.
std::vector<RPoly> cut_cell(std::vector<RPoly> pieces,
                            const std::vector<MirrorCircle>& mirrors, bool torus) {
  for (const MirrorCircle& m : mirrors) {
    std::vector<Rat> levels;
    if (torus) {
      long long lo = std::min<long long>(0, m.a1) + std::min<long long>(0, m.a2);
      long long hi = std::max<long long>(0, m.a1) + std::max<long long>(0, m.a2);
      for (long long k = lo; k <= hi; ++k) {
        Rat level = m.c + Rat(k);
        if (level < Rat(lo) || level > Rat(hi)) continue;
        levels.push_back(level);
      }
    } else {
      levels.push_back(m.c);
    }
    for (const Rat& level : levels) {
      std::vector<RPoly> next;
      for (RPoly& p : pieces) {
        auto [hi_side, lo_side] = split_poly(p, m.a1, m.a2, level);
        if (hi_side) next.push_back(std::move(*hi_side));
        if (lo_side) next.push_back(std::move(*lo_side));
      }
      pieces = std::move(next);
    }
  }
  return pieces;
}

// Index of the mirror containing the segment (v, w); torus mode allows a
// common integer offset.
std::optional<int> edge_mirror(const std::vector<MirrorCircle>& mirrors,
                               const RatVec2& v, const RatVec2& w, bool torus) {
  for (std::size_t m = 0; m < mirrors.size(); ++m) {
    Rat t1 = line_value(mirrors[m].a1, mirrors[m].a2, v) - mirrors[m].c;
    Rat t2 = line_value(mirrors[m].a1, mirrors[m].a2, w) - mirrors[m].c;
    if (t1 != t2) continue;
    if (torus ? rat_is_int(t1) : t1 == Rat(0)) return static_cast<int>(m);
  }
  return std::nullopt;
}

struct GluedCell {
  std::vector<TorusScene::Piece> pieces;
  int chamber_count = 0;
  std::vector<TorusScene::Adjacency> adjacency;
};

// Chambers = pieces merged across shared edges that lie on no mirror. In torus
// mode edges on the far cell boundary are translated onto the near one first.
GluedCell glue_pieces(const std::vector<RPoly>& polys,
                      const std::vector<MirrorCircle>& mirrors, bool torus) {
  std::map<EdgeKey, std::vector<int>> edge_pieces;
  std::map<EdgeKey, std::optional<int>> edge_mirror_of;
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    const RPoly& p = polys[pi];
    for (std::size_t i = 0; i < p.size(); ++i) {
      RatVec2 v = p[i], w = p[(i + 1) % p.size()];
      if (torus) {
        if (v.x == Rat(1) && w.x == Rat(1)) {
          v.x -= 1;
          w.x -= 1;
        }
        if (v.y == Rat(1) && w.y == Rat(1)) {
          v.y -= 1;
          w.y -= 1;
        }
      }
      EdgeKey key = ratvec_less(v, w) ? EdgeKey{v, w} : EdgeKey{w, v};
      auto [it, fresh] = edge_pieces.try_emplace(key);
      it->second.push_back(static_cast<int>(pi));
      if (fresh) edge_mirror_of[key] = edge_mirror(mirrors, key.a, key.b, torus);
    }
  }

  UnionFind uf(static_cast<int>(polys.size()));
  std::vector<std::tuple<EdgeKey, int, int>> mirror_edges;
  for (const auto& [key, touching] : edge_pieces) {
    if (touching.size() == 1) {
      if (torus)
        throw std::logic_error("unpaired cell-boundary edge in the glued arrangement");
      continue;  // working-box boundary in plane mode
    }
    if (touching.size() != 2)
      throw std::logic_error("arrangement edge shared by more than two pieces");
    auto m = edge_mirror_of[key];
    if (m)
      mirror_edges.emplace_back(key, touching[0], touching[1]);
    else
      uf.unite(touching[0], touching[1]);
  }

  GluedCell out;
  std::map<int, int> chamber_of_root;
  out.pieces.resize(polys.size());
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    int root = uf.find(static_cast<int>(pi));
    auto [it, fresh] = chamber_of_root.try_emplace(root, out.chamber_count);
    if (fresh) ++out.chamber_count;
    out.pieces[pi] = {polys[pi], it->second};
  }
  for (const auto& [key, p1, p2] : mirror_edges) {
    auto m = edge_mirror_of[key];
    out.adjacency.push_back(
        {out.pieces[p1].chamber, out.pieces[p2].chamber, *m});
  }
  return out;
}

std::vector<std::string> palette() {
  return {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
          "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

bool Isometry2::is_identity(double tol) const {
  return (a - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         t.cwiseAbs().maxCoeff() <= tol;
}

Isometry2 reflection_about_line(const Eigen::Vector2d& point,
                                const Eigen::Vector2d& direction) {
  if (direction.norm() < kMatrixTol)
    throw ValidationError(ValidationError::Code::BadScene,
                          "mirror line needs a nonzero direction");
  return line_reflection({point, direction});
}

Isometry2 make_translation(const Eigen::Vector2d& t) {
  return {Eigen::Matrix2d::Identity(), t};
}

IsoTable::IsoTable(std::optional<Lattice2> lattice) {
  if (lattice) {
    basis_ = lattice->basis;
    basis_inv_ = lattice->basis.inverse();
  }
}

Isometry2 IsoTable::normalize(const Isometry2& g) const {
  if (!basis_) return g;
  Eigen::Vector2d c = (*basis_inv_) * g.t;
  for (int i = 0; i < 2; ++i) {
    double f = c[i] - std::floor(c[i]);
    if (f > 1.0 - kMatrixTol || f < kMatrixTol) f = 0.0;
    c[i] = f;
  }
  return {g.a, (*basis_) * c};
}

int IsoTable::insert(const Isometry2& g) {
  Isometry2 n = normalize(g);
  auto e = iso_entries(n);
  Isometry2 snapped;
  std::array<double, 6> se{};
  for (int i = 0; i < 6; ++i) se[i] = pool_.snap(e[i]);
  snapped.a << se[0], se[1], se[2], se[3];
  snapped.t << se[4], se[5];
  auto& bucket = buckets_[iso_hash(se)];
  for (int id : bucket)
    if (iso_close(items_[id], snapped)) return id;
  int id = static_cast<int>(items_.size());
  items_.push_back(snapped);
  bucket.push_back(id);
  return id;
}

std::optional<int> IsoTable::find(const Isometry2& g) const {
  Isometry2 n = normalize(g);
  auto e = iso_entries(n);
  std::array<double, 6> se{};
  for (int i = 0; i < 6; ++i) {
    auto v = pool_.find(e[i]);
    if (!v) return std::nullopt;
    se[i] = *v;
  }
  auto it = buckets_.find(iso_hash(se));
  if (it == buckets_.end()) return std::nullopt;
  Isometry2 snapped;
  snapped.a << se[0], se[1], se[2], se[3];
  snapped.t << se[4], se[5];
  for (int id : it->second)
    if (iso_close(items_[id], snapped)) return id;
  return std::nullopt;
}

FlatGroupBall flat_group_ball(const std::vector<Isometry2>& generators, int radius,
                              std::optional<Lattice2> lattice, std::size_t cap) {
  if (radius < 0)
    throw ValidationError(ValidationError::Code::BadScene,
                          "ball radius must be nonnegative");
  FlatGroupBall ball{generators, {}, lattice, radius, {}, IsoTable(lattice)};
  for (const Isometry2& g : generators) ball.alphabet.push_back(g);
  for (const Isometry2& g : generators) {
    if (ball.table.normalize(g.compose(g)).is_identity()) continue;
    Isometry2 inv = g.inverse();
    bool present = false;
    for (const Isometry2& h : ball.alphabet)
      if (iso_close(ball.table.normalize(h), ball.table.normalize(inv)))
        present = true;
    if (!present) ball.alphabet.push_back(inv);
  }

  ball.table.insert(Isometry2{});
  ball.elements.push_back({ball.table.items()[0], {}, 0});
  std::vector<int> frontier{0};
  for (int len = 1; len <= radius && !frontier.empty(); ++len) {
    std::vector<int> next;
    for (int id : frontier) {
      for (std::size_t j = 0; j < ball.alphabet.size(); ++j) {
        Isometry2 h = ball.elements[id].iso.compose(ball.alphabet[j]);
        int before = static_cast<int>(ball.elements.size());
        int hid = ball.table.insert(h);
        if (hid < before) continue;  // seen before
        std::vector<int> word = ball.elements[id].word;
        word.push_back(static_cast<int>(j));
        ball.elements.push_back({ball.table.items()[hid], std::move(word), len});
        next.push_back(hid);
        if (ball.elements.size() > cap)
          throw ComputationError(
              "group ball exceeded the element cap; non-discrete input suspected");
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

std::vector<int> DirichletPolygon::tag_set() const {
  std::vector<int> tags;
  for (const auto& t : edge_tags)
    if (t) tags.push_back(*t);
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  return tags;
}

namespace {

struct TaggedPoly {
  std::vector<Eigen::Vector2d> v;
  std::vector<std::optional<int>> tag;  // tag[i] covers edge v[i] -> v[i+1]
};

TaggedPoly working_box(const Eigen::Vector2d& c, double w) {
  TaggedPoly p;
  p.v = {c + Eigen::Vector2d(-w, -w), c + Eigen::Vector2d(w, -w),
         c + Eigen::Vector2d(w, w), c + Eigen::Vector2d(-w, w)};
  p.tag.assign(4, std::nullopt);
  return p;
}

void merge_duplicate_vertices(TaggedPoly& p) {
  TaggedPoly out;
  std::size_t n = p.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& next = p.v[(i + 1) % n];
    if ((p.v[i] - next).norm() <= 1e-9) continue;  // drop vertex, keep later one
    out.v.push_back(p.v[i]);
    out.tag.push_back(p.tag[i]);
  }
  p = std::move(out);
}

void clip_halfplane(TaggedPoly& p, const Eigen::Vector2d& n, double d, int tag) {
  constexpr double eps = 1e-12;
  std::size_t m = p.v.size();
  if (m == 0) return;
  std::vector<double> e(m);
  bool outside = false, inside = false;
  for (std::size_t i = 0; i < m; ++i) {
    e[i] = n.dot(p.v[i]) - d;
    outside = outside || e[i] > eps;
    inside = inside || e[i] < -eps;
  }
  if (!outside) return;
  if (!inside) {
    p = TaggedPoly{};
    return;
  }
  TaggedPoly out;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = (i + 1) % m;
    bool ain = e[i] <= eps, bin = e[j] <= eps;
    if (ain) {
      out.v.push_back(p.v[i]);
      if (bin) {
        out.tag.push_back(p.tag[i]);
      } else {
        out.tag.push_back(p.tag[i]);
        double s = e[i] / (e[i] - e[j]);
        out.v.push_back(p.v[i] + s * (p.v[j] - p.v[i]));
        out.tag.push_back(tag);  // chord on the clip line
      }
    } else if (bin) {
      double s = e[i] / (e[i] - e[j]);
      out.v.push_back(p.v[i] + s * (p.v[j] - p.v[i]));
      out.tag.push_back(p.tag[i]);
    }
  }
  merge_duplicate_vertices(out);
  p = std::move(out);
}

TaggedPoly clip_to_radius(const FlatGroupBall& ball,
                          const std::vector<Eigen::Vector2d>& orbit, int base,
                          double halfwidth, int radius_limit) {
  const Eigen::Vector2d& p = orbit[base];
  TaggedPoly poly = working_box(p, halfwidth);
  for (std::size_t h = 0; h < orbit.size(); ++h) {
    if (static_cast<int>(h) == base) continue;
    if (ball.elements[h].length > radius_limit) continue;
    Eigen::Vector2d n = orbit[h] - p;
    double d = 0.5 * (orbit[h].squaredNorm() - p.squaredNorm());
    clip_halfplane(poly, n, d, static_cast<int>(h));
  }
  if (poly.v.size() < 3)
    throw std::logic_error("Dirichlet clipping lost the base point");
  return poly;
}

}  // namespace

DirichletPolygon dirichlet_domain_at(const FlatGroupBall& ball,
                                     const Eigen::Vector2d& x0, int base_element,
                                     double working_halfwidth) {
  if (ball.lattice)
    throw ValidationError(ValidationError::Code::BadScene,
                          "Dirichlet domains need a plane group ball");
  if (base_element < 0 || base_element >= static_cast<int>(ball.elements.size()))
    throw ValidationError(ValidationError::Code::BadScene,
                          "base element outside the ball");
  if (ball.radius < 2)
    throw ComputationError("ball radius too small for a Dirichlet stability check");

  std::vector<Eigen::Vector2d> orbit(ball.elements.size());
  for (std::size_t h = 0; h < orbit.size(); ++h)
    orbit[h] = ball.elements[h].iso.apply(x0);
  const Eigen::Vector2d& p = orbit[base_element];
  double maxdist = 0;
  for (std::size_t h = 0; h < orbit.size(); ++h) {
    if (static_cast<int>(h) == base_element) continue;
    double dist = (orbit[h] - p).norm();
    if (dist <= kGeomTol)
      throw ValidationError(ValidationError::Code::BadScene,
                            "base point is not regular for this ball");
    maxdist = std::max(maxdist, dist);
  }
  double w = working_halfwidth > 0 ? working_halfwidth : 2.0 * maxdist + 1.0;

  TaggedPoly full = clip_to_radius(ball, orbit, base_element, w, ball.radius);
  TaggedPoly trimmed = clip_to_radius(ball, orbit, base_element, w, ball.radius - 1);
  auto tags_of = [](const TaggedPoly& poly) {
    std::set<int> s;
    for (const auto& t : poly.tag)
      if (t) s.insert(*t);
    return s;
  };
  if (tags_of(full) != tags_of(trimmed))
    throw ComputationError(
        "Dirichlet domain did not stabilize at this ball radius");

  DirichletPolygon out;
  out.base = p;
  out.vertices = full.v;
  out.edge_tags = full.tag;
  out.bounded = std::none_of(full.tag.begin(), full.tag.end(),
                             [](const auto& t) { return !t.has_value(); });
  return out;
}

DirichletPolygon dirichlet_domain(const FlatGroupBall& ball,
                                  const Eigen::Vector2d& x0,
                                  double working_halfwidth) {
  return dirichlet_domain_at(ball, x0, 0, working_halfwidth);
}

DirichletPolygon transform_polygon(const Isometry2& g, const DirichletPolygon& p) {
  DirichletPolygon out;
  out.base = g.apply(p.base);
  out.vertices.reserve(p.vertices.size());
  for (const Eigen::Vector2d& v : p.vertices) out.vertices.push_back(g.apply(v));
  if (g.a.determinant() < 0)
    std::reverse(out.vertices.begin(), out.vertices.end());
  out.edge_tags.assign(out.vertices.size(), std::nullopt);  // tags do not transport
  out.bounded = p.bounded;
  return out;
}

namespace {

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  Eigen::Vector2d ab = b - a;
  double len2 = ab.squaredNorm();
  if (len2 == 0) return (p - a).norm();
  double s = std::clamp(ab.dot(p - a) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

double point_polygon_distance(const Eigen::Vector2d& p,
                              const std::vector<Eigen::Vector2d>& poly) {
  bool insidecw = true, insideccw = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
    double cross = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
    insideccw = insideccw && cross >= -1e-12;
    insidecw = insidecw && cross <= 1e-12;
  }
  if (insideccw || insidecw) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, point_segment_distance(p, poly[i],
                                                 poly[(i + 1) % poly.size()]));
  return best;
}

}  // namespace

double hausdorff_distance(const std::vector<Eigen::Vector2d>& a,
                          const std::vector<Eigen::Vector2d>& b) {
  if (a.empty() || b.empty())
    throw ValidationError(ValidationError::Code::BadScene,
                          "Hausdorff distance of an empty polygon");
  double d = 0;
  for (const Eigen::Vector2d& p : a) d = std::max(d, point_polygon_distance(p, b));
  for (const Eigen::Vector2d& p : b) d = std::max(d, point_polygon_distance(p, a));
  return d;  // convex input: vertex-to-polygon distances realize the supremum
}

std::vector<int> poincare_regenerates(const FlatGroupBall& ball,
                                      const std::vector<int>& neighbors) {
  std::vector<Isometry2> alphabet;
  for (int id : neighbors) {
    if (id < 0 || id >= static_cast<int>(ball.elements.size()))
      throw ValidationError(ValidationError::Code::BadScene,
                            "neighbor id outside the ball");
    alphabet.push_back(ball.elements[id].iso);
    alphabet.push_back(ball.elements[id].iso.inverse());
  }
  IsoTable closure(ball.lattice);
  closure.insert(Isometry2{});
  std::vector<int> frontier{0};
  std::size_t cap = 4 * ball.elements.size() + 64;
  for (int depth = 1; depth <= ball.radius + 2 && !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int id : frontier) {
      for (const Isometry2& g : alphabet) {
        Isometry2 h = closure.items()[id].compose(g);
        int before = static_cast<int>(closure.items().size());
        int hid = closure.insert(h);
        if (hid == before) next.push_back(hid);
        if (closure.items().size() > cap) {
          frontier.clear();
          next.clear();
          break;
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<int> missing;
  for (std::size_t id = 0; id < ball.elements.size(); ++id) {
    if (ball.elements[id].length > ball.radius - 2) continue;
    if (!closure.find(ball.elements[id].iso)) missing.push_back(static_cast<int>(id));
  }
  return missing;
}

PoincareReport poincare_neighbor_check(const FlatGroupBall& ball,
                                       const Eigen::Vector2d& x0) {
  DirichletPolygon d = dirichlet_domain(ball, x0);
  PoincareReport report;
  report.neighbors = d.tag_set();
  report.missing = poincare_regenerates(ball, report.neighbors);
  report.pass = report.missing.empty();
  return report;
}

// ---- scenes ----

TorusScene torus_scene(const Lattice2& lattice, const std::vector<Line2>& mirrors,
                       std::size_t max_group) {
  if (mirrors.empty())
    throw ValidationError(ValidationError::Code::BadScene,
                          "a scene needs at least one mirror");
  if (std::abs(lattice.basis.determinant()) < kMatrixTol)
    throw ValidationError(ValidationError::Code::BadScene,
                          "lattice basis is singular");
  Eigen::Matrix2d li = lattice.basis.inverse();

  TorusScene scene;
  scene.lattice = lattice;

  std::vector<TorusIsometry> gens;
  for (const Line2& line : mirrors) {
    Isometry2 amb = line_reflection(line);
    Eigen::Matrix2d bd = li * amb.a * lattice.basis;
    TorusIsometry g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double r = std::round(bd(i, j));
        if (std::abs(bd(i, j) - r) > 1e-7)
          throw ValidationError(ValidationError::Code::BadScene,
                                "mirror does not normalize the lattice");
        g.b[i][j] = static_cast<long long>(r);
      }
    Eigen::Vector2d ud = li * amb.t;
    g.u = frac_vec({rationalize_or_throw(ud.x(), "mirror translation"),
                    rationalize_or_throw(ud.y(), "mirror translation")});
    gens.push_back(g);
  }

  std::map<TorusKey, int> seen;
  scene.group.push_back(TorusIsometry{});
  scene.words.push_back({});
  seen[torus_key(scene.group[0])] = 0;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int id : frontier) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        TorusIsometry h = torus_compose(scene.group[id], gens[j]);
        auto [it, fresh] = seen.try_emplace(torus_key(h),
                                            static_cast<int>(scene.group.size()));
        if (!fresh) continue;
        std::vector<int> word = scene.words[id];
        word.push_back(static_cast<int>(j));
        scene.group.push_back(h);
        scene.words.push_back(std::move(word));
        next.push_back(it->second);
        if (scene.group.size() > max_group)
          throw ComputationError(
              "torus reflection group did not close; non-discrete or too large");
      }
    }
    frontier = std::move(next);
  }
  for (const TorusIsometry& g : gens)
    scene.generator_elements.push_back(seen.at(torus_key(g)));

  for (std::size_t id = 0; id < scene.group.size(); ++id) {
    const TorusIsometry& g = scene.group[id];
    if (torus_det(g) != -1) continue;
    if (!torus_is_identity(torus_compose(g, g))) continue;
    auto circles = fixed_circles(g);
    if (circles.empty()) continue;  // glide reflection
    scene.reflections.push_back(static_cast<int>(id));
    std::vector<int> ids;
    for (const MirrorCircle& c : circles) {
      auto it = std::find(scene.mirrors.begin(), scene.mirrors.end(), c);
      if (it == scene.mirrors.end()) {
        scene.mirrors.push_back(c);
        ids.push_back(static_cast<int>(scene.mirrors.size()) - 1);
      } else {
        ids.push_back(static_cast<int>(it - scene.mirrors.begin()));
      }
    }
    scene.mirrors_of_reflection.push_back(std::move(ids));
  }

  RPoly cell{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  auto polys = cut_cell({cell}, scene.mirrors, true);
  GluedCell glued = glue_pieces(polys, scene.mirrors, true);
  scene.pieces = std::move(glued.pieces);
  scene.chamber_count = glued.chamber_count;
  scene.adjacency = std::move(glued.adjacency);

  std::vector<RatVec2> sample(scene.chamber_count, RatVec2{Rat(0), Rat(0)});
  std::vector<bool> have(scene.chamber_count, false);
  for (const auto& piece : scene.pieces) {
    if (have[piece.chamber]) continue;
    sample[piece.chamber] = poly_centroid(piece.poly);
    have[piece.chamber] = true;
  }
  auto locate = [&](const RatVec2& q) {
    for (std::size_t pi = 0; pi < scene.pieces.size(); ++pi)
      if (poly_contains(scene.pieces[pi].poly, q))
        return scene.pieces[pi].chamber;
    throw std::logic_error("torus point escaped every piece of the cell");
  };
  scene.action.assign(scene.group.size(), std::vector<int>(scene.chamber_count));
  for (std::size_t id = 0; id < scene.group.size(); ++id) {
    const TorusIsometry& g = scene.group[id];
    for (int ch = 0; ch < scene.chamber_count; ++ch) {
      RatVec2 q{Rat(g.b[0][0]) * sample[ch].x + Rat(g.b[0][1]) * sample[ch].y + g.u.x,
                Rat(g.b[1][0]) * sample[ch].x + Rat(g.b[1][1]) * sample[ch].y + g.u.y};
      scene.action[id][ch] = locate(frac_vec(q));
    }
    std::vector<int> hit(scene.chamber_count, 0);
    for (int ch : scene.action[id]) ++hit[ch];
    if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; }))
      throw std::logic_error("group element does not permute the chambers");
  }
  scene.action_free = true;
  for (std::size_t id = 1; id < scene.group.size(); ++id)
    for (int ch = 0; ch < scene.chamber_count; ++ch)
      if (scene.action[id][ch] == ch) scene.action_free = false;
  std::vector<bool> orbit(scene.chamber_count, false);
  for (const auto& row : scene.action) orbit[row[0]] = true;
  scene.action_transitive =
      std::all_of(orbit.begin(), orbit.end(), [](bool b) { return b; });
  return scene;
}

TorusScene plane_scene(const std::vector<Line2>& mirrors, double halfwidth) {
  if (mirrors.empty())
    throw ValidationError(ValidationError::Code::BadScene,
                          "a scene needs at least one mirror");
  if (halfwidth <= 0)
    throw ValidationError(ValidationError::Code::BadScene,
                          "working box half-width must be positive");
  TorusScene scene;
  scene.plane_mirrors = mirrors;
  scene.box_halfwidth = halfwidth;

  for (std::size_t i = 0; i < mirrors.size(); ++i) {
    Rat dx = rationalize_or_throw(mirrors[i].direction.x(), "mirror direction");
    Rat dy = rationalize_or_throw(mirrors[i].direction.y(), "mirror direction");
    Rat px = rationalize_or_throw(mirrors[i].point.x(), "mirror point");
    Rat py = rationalize_or_throw(mirrors[i].point.y(), "mirror point");
    if (dx == Rat(0) && dy == Rat(0))
      throw ValidationError(ValidationError::Code::BadScene,
                            "mirror line needs a nonzero direction");
    // integer primitive normal to (dx, dy)
    long long n1 = (-dy).numerator() * dx.denominator();
    long long n2 = dx.numerator() * dy.denominator();
    long long g = std::gcd(std::abs(n1), std::abs(n2));
    n1 /= g;
    n2 /= g;
    Rat c = Rat(n1) * px + Rat(n2) * py;
    if (n1 < 0 || (n1 == 0 && n2 < 0)) {
      n1 = -n1;
      n2 = -n2;
      c = -c;
    }
    MirrorCircle circle{n1, n2, c};
    auto it = std::find(scene.mirrors.begin(), scene.mirrors.end(), circle);
    int mid;
    if (it == scene.mirrors.end()) {
      scene.mirrors.push_back(circle);
      mid = static_cast<int>(scene.mirrors.size()) - 1;
    } else {
      mid = static_cast<int>(it - scene.mirrors.begin());
    }
    scene.reflections.push_back(static_cast<int>(i));
    scene.mirrors_of_reflection.push_back({mid});
  }

  Rat w = rationalize_or_throw(halfwidth, "box half-width");
  RPoly box{{-w, -w}, {w, -w}, {w, w}, {-w, w}};
  auto polys = cut_cell({box}, scene.mirrors, false);
  GluedCell glued = glue_pieces(polys, scene.mirrors, false);
  scene.pieces = std::move(glued.pieces);
  scene.chamber_count = glued.chamber_count;
  scene.adjacency = std::move(glued.adjacency);
  return scene;
}

DissectReport dissecting_check(const TorusScene& scene, int reflection_index) {
  if (reflection_index < 0 ||
      reflection_index >= static_cast<int>(scene.mirrors_of_reflection.size()))
    throw ValidationError(ValidationError::Code::BadScene,
                          "reflection index outside the scene");
  const std::vector<int>& dropped = scene.mirrors_of_reflection[reflection_index];
  UnionFind uf(scene.chamber_count);
  for (const auto& adj : scene.adjacency) {
    if (std::find(dropped.begin(), dropped.end(), adj.mirror) != dropped.end())
      continue;
    uf.unite(adj.c1, adj.c2);
  }
  std::set<int> roots;
  for (int ch = 0; ch < scene.chamber_count; ++ch) roots.insert(uf.find(ch));
  DissectReport report;
  report.components = static_cast<int>(roots.size());
  report.dissecting = report.components == 2;
  return report;
}

RelationResult relation_check(const TorusScene& scene, std::span<const int> word) {
  if (!scene.lattice)
    throw ValidationError(ValidationError::Code::BadScene,
                          "relation checks need a torus scene");
  TorusIsometry acc;
  for (int letter : word) {
    if (letter < 0 || letter >= static_cast<int>(scene.generator_elements.size()))
      throw ValidationError(ValidationError::Code::BadScene,
                            "relation letter outside the generator list");
    acc = torus_compose(acc, scene.group[scene.generator_elements[letter]]);
  }
  const Eigen::Matrix2d& basis = scene.lattice->basis;
  Eigen::Matrix2d bd;
  bd << static_cast<double>(acc.b[0][0]), static_cast<double>(acc.b[0][1]),
      static_cast<double>(acc.b[1][0]), static_cast<double>(acc.b[1][1]);
  Eigen::Vector2d ud(rat_to_double(acc.u.x), rat_to_double(acc.u.y));
  RelationResult out;
  out.identity = torus_is_identity(acc);
  out.result = {basis * bd * basis.inverse(), basis * ud};
  return out;
}

RelationResult relation_check(const FlatGroupBall& ball, std::span<const int> word) {
  Isometry2 acc;
  for (int letter : word) {
    if (letter < 0 || letter >= static_cast<int>(ball.input_generators.size()))
      throw ValidationError(ValidationError::Code::BadScene,
                            "relation letter outside the generator list");
    acc = acc.compose(ball.input_generators[letter]);
  }
  RelationResult out;
  out.result = acc;
  out.identity = ball.table.normalize(acc).is_identity();
  return out;
}

TorusScene named_scene(const std::string& name) {
  Eigen::Vector2d ex(1, 0), ey(0, 1);
  if (name == "fig5-left") {
    Lattice2 l{2.0 * Eigen::Matrix2d::Identity()};
    return torus_scene(l, {{Eigen::Vector2d(0, 0), ey},
                           {Eigen::Vector2d(0, 0), ex},
                           {Eigen::Vector2d(0.5, 0), ey},
                           {Eigen::Vector2d(0, 0.5), ex}});
  }
  if (name == "fig5-right") {
    Lattice2 l{Eigen::Matrix2d::Identity()};
    return torus_scene(l, {{Eigen::Vector2d(0, 0), ey},
                           {Eigen::Vector2d(0, 0), ex},
                           {Eigen::Vector2d(0.5, 0), ey},
                           {Eigen::Vector2d(0, 0.5), ex}});
  }
  if (name == "su3") {
    Lattice2 l;
    l.basis << 1.0, -0.5, 0.0, std::sqrt(3.0) / 2.0;
    Eigen::Vector2d a1 = l.basis.col(0), a2 = l.basis.col(1);
    Eigen::Vector2d zero(0, 0);
    auto perp = [](const Eigen::Vector2d& v) { return Eigen::Vector2d(-v.y(), v.x()); };
    return torus_scene(l, {{zero, perp(a1)}, {zero, perp(a2)}, {zero, perp(a1 + a2)}});
  }
  if (name == "su2") {
    Lattice2 l{Eigen::Matrix2d::Identity()};
    return torus_scene(l, {{Eigen::Vector2d(0, 0), ey}, {Eigen::Vector2d(0, 0), ex}});
  }
  throw ValidationError(ValidationError::Code::BadScene,
                        "unknown scene name: " + name);
}

std::vector<std::string> named_scene_list() {
  return {"fig5-left", "fig5-right", "su3", "su2"};
}

// ---- SU(n) lattice bookkeeping ----

long long integer_determinant(std::vector<std::vector<long long>> m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n)
      throw ValidationError(ValidationError::Code::NotSquare,
                            "determinant of a non-square matrix");
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;  // Bareiss: exact
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// Coordinates of v in the row basis, or nothing if the solve degenerates.
std::optional<std::vector<Rat>> solve_in_row_basis(
    const std::vector<std::vector<long long>>& basis, const std::vector<long long>& v) {
  std::size_t n = basis.size();
  std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[j][i] = Rat(basis[i][j]);  // transpose
    aug[i][n] = Rat(v[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == Rat(0)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(aug[col], aug[piv]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || aug[row][col] == Rat(0)) continue;
      Rat f = aug[row][col] / aug[col][col];
      for (std::size_t j = col; j <= n; ++j) aug[row][j] -= f * aug[col][j];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

}  // namespace

WeightLatticeData su_torus_data(int n) {
  if (n < 2 || n > 20)
    throw ValidationError(ValidationError::Code::BadScene,
                          "su_torus_data expects 2 <= n <= 20");
  WeightLatticeData data;
  data.n = n;
  data.rank = n - 1;
  int r = data.rank;
  data.cartan.assign(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i) {
    data.cartan[i][i] = 2;
    if (i + 1 < r) {
      data.cartan[i][i + 1] = -1;
      data.cartan[i + 1][i] = -1;
    }
  }
  // simple roots in fundamental-weight coordinates are the Cartan rows
  data.root_basis = data.cartan;
  data.anal_basis.assign(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i) data.anal_basis[i][i] = 1;
  data.alg_basis = data.anal_basis;

  for (const auto& basis : {data.anal_basis, data.alg_basis}) {
    for (const auto& root : data.root_basis) {
      auto coords = solve_in_row_basis(basis, root);
      if (!coords)
        throw std::logic_error("integral-form basis is singular");
      for (const Rat& c : *coords)
        if (!rat_is_int(c))
          throw std::logic_error("root lattice escapes the integral-form lattice");
    }
  }

  long long droot = std::abs(integer_determinant(data.root_basis));
  long long danal = std::abs(integer_determinant(data.anal_basis));
  long long dalg = std::abs(integer_determinant(data.alg_basis));
  if (danal == 0 || dalg == 0 || droot % danal != 0 || droot % dalg != 0)
    throw std::logic_error("lattice indices failed to divide");
  data.anal_index = droot / danal;
  data.alg_index = droot / dalg;

  data.weyl_order = 1;
  for (int k = 2; k <= n; ++k) data.weyl_order *= static_cast<BigCount>(k);
  return data;
}

// ---- drawings and reports ----

std::string dirichlet_svg(const FlatGroupBall& ball, const Eigen::Vector2d& x0,
                          const DirichletPolygon& poly) {
  double xmin = poly.base.x(), xmax = poly.base.x();
  double ymin = poly.base.y(), ymax = poly.base.y();
  auto grow = [&](const Eigen::Vector2d& p) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  };
  for (const Eigen::Vector2d& v : poly.vertices) grow(v);
  std::vector<Eigen::Vector2d> orbit;
  for (const auto& el : ball.elements) {
    orbit.push_back(el.iso.apply(x0));
    grow(orbit.back());
  }
  double pad = 0.08 * std::max(xmax - xmin, ymax - ymin) + 1e-3;
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  double scale = 640.0 / std::max(xmax - xmin, 1e-9);
  double height = (ymax - ymin) * scale;
  auto tx = [&](double x) { return (x - xmin) * scale; };
  auto ty = [&](double y) { return height - (y - ymin) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 640 " << fmt(height) << "\">\n";
  svg << "<rect width=\"640\" height=\"" << fmt(height) << "\" fill=\"#fdfdfb\"/>\n";
  svg << "<polygon fill=\"#cfe5f5\" fill-opacity=\"0.7\" stroke=\"none\" points=\"";
  for (const Eigen::Vector2d& v : poly.vertices)
    svg << fmt(tx(v.x())) << "," << fmt(ty(v.y())) << " ";
  svg << "\"/>\n";
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    const Eigen::Vector2d& a = poly.vertices[i];
    const Eigen::Vector2d& b = poly.vertices[(i + 1) % poly.vertices.size()];
    bool tagged = poly.edge_tags[i].has_value();
    svg << "<line x1=\"" << fmt(tx(a.x())) << "\" y1=\"" << fmt(ty(a.y()))
        << "\" x2=\"" << fmt(tx(b.x())) << "\" y2=\"" << fmt(ty(b.y())) << "\" stroke=\""
        << (tagged ? "#1f6fb2" : "#d04040") << "\" stroke-width=\"2\""
        << (tagged ? "" : " stroke-dasharray=\"6 4\"") << "/>\n";
  }
  for (const Eigen::Vector2d& q : orbit)
    svg << "<circle cx=\"" << fmt(tx(q.x())) << "\" cy=\"" << fmt(ty(q.y()))
        << "\" r=\"2.2\" fill=\"#777\"/>\n";
  svg << "<circle cx=\"" << fmt(tx(poly.base.x())) << "\" cy=\""
      << fmt(ty(poly.base.y())) << "\" r=\"3.5\" fill=\"#d04040\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string torus_svg(const TorusScene& scene) {
  bool torus = scene.lattice.has_value();
  double lo = torus ? 0.0 : -scene.box_halfwidth;
  double hi = torus ? 1.0 : scene.box_halfwidth;
  double scale = 420.0 / (hi - lo), margin = 12.0, size = 420.0 + 2 * margin;
  auto tx = [&](double x) { return margin + (x - lo) * scale; };
  auto ty = [&](double y) { return margin + (hi - y) * scale; };
  auto colors = palette();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size)
      << "\" height=\"" << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " "
      << fmt(size) << "\">\n";
  svg << "<rect width=\"" << fmt(size) << "\" height=\"" << fmt(size)
      << "\" fill=\"#fdfdfb\"/>\n";
  for (const auto& piece : scene.pieces) {
    svg << "<polygon fill=\"" << colors[piece.chamber % colors.size()]
        << "\" fill-opacity=\"0.8\" stroke=\"#666\" stroke-width=\"0.6\" points=\"";
    for (const RatVec2& v : piece.poly)
      svg << fmt(tx(rat_to_double(v.x))) << "," << fmt(ty(rat_to_double(v.y))) << " ";
    svg << "\"/>\n";
  }
  // mirror lines clipped to the drawing square
  for (const MirrorCircle& m : scene.mirrors) {
    auto a1 = static_cast<double>(m.a1);
    auto a2 = static_cast<double>(m.a2);
    double cbase = rat_to_double(m.c);
    int kmin = 0, kmax = 0;
    if (torus) {
      kmin = static_cast<int>(std::floor(std::min(0.0, a1) + std::min(0.0, a2))) - 1;
      kmax = static_cast<int>(std::ceil(std::max(0.0, a1) + std::max(0.0, a2))) + 1;
    }
    for (int k = kmin; k <= kmax; ++k) {
      double c = cbase + k;
      std::vector<Eigen::Vector2d> hits;
      auto push_hit = [&](double x, double y) {
        if (x < lo - 1e-9 || x > hi + 1e-9 || y < lo - 1e-9 || y > hi + 1e-9) return;
        for (const auto& h : hits)
          if ((h - Eigen::Vector2d(x, y)).norm() < 1e-9) return;
        hits.emplace_back(x, y);
      };
      if (std::abs(a2) > 1e-12) {
        push_hit(lo, (c - a1 * lo) / a2);
        push_hit(hi, (c - a1 * hi) / a2);
      }
      if (std::abs(a1) > 1e-12) {
        push_hit((c - a2 * lo) / a1, lo);
        push_hit((c - a2 * hi) / a1, hi);
      }
      if (hits.size() < 2) continue;
      svg << "<line x1=\"" << fmt(tx(hits[0].x())) << "\" y1=\"" << fmt(ty(hits[0].y()))
          << "\" x2=\"" << fmt(tx(hits[1].x())) << "\" y2=\"" << fmt(ty(hits[1].y()))
          << "\" stroke=\"#222\" stroke-width=\"1.6\"/>\n";
    }
  }
  std::vector<bool> labeled(scene.chamber_count, false);
  for (const auto& piece : scene.pieces) {
    if (labeled[piece.chamber]) continue;
    labeled[piece.chamber] = true;
    RatVec2 c = poly_centroid(piece.poly);
    svg << "<text x=\"" << fmt(tx(rat_to_double(c.x))) << "\" y=\""
        << fmt(ty(rat_to_double(c.y)))
        << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111\">"
        << piece.chamber << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

nlohmann::json polygon_to_json(const DirichletPolygon& p) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Eigen::Vector2d& v : p.vertices)
    vertices.push_back({v.x(), v.y()});
  nlohmann::json tags = nlohmann::json::array();
  for (const auto& t : p.edge_tags) {
    if (t)
      tags.push_back(*t);
    else
      tags.push_back(nullptr);
  }
  return nlohmann::json{{"base", {p.base.x(), p.base.y()}},
                        {"vertices", std::move(vertices)},
                        {"edge_tags", std::move(tags)},
                        {"bounded", p.bounded},
                        {"neighbors", p.tag_set()}};
}

nlohmann::json scene_report_json(const TorusScene& scene) {
  bool torus = scene.lattice.has_value();
  nlohmann::json dissections = nlohmann::json::array();
  for (std::size_t k = 0; k < scene.mirrors_of_reflection.size(); ++k) {
    DissectReport rep = dissecting_check(scene, static_cast<int>(k));
    dissections.push_back(
        {{"reflection", k},
         {"fixed_circles", scene.mirrors_of_reflection[k].size()},
         {"components_after_cut", rep.components},
         {"dissecting", rep.dissecting}});
  }
  nlohmann::json out{{"mode", torus ? "torus" : "plane"},
                     {"chambers", scene.chamber_count},
                     {"pieces", scene.pieces.size()},
                     {"mirror_circles", scene.mirrors.size()},
                     {"reflections", scene.reflections.size()},
                     {"dissections", std::move(dissections)}};
  if (torus) {
    out["group_order"] = scene.group.size();
    out["action_free"] = scene.action_free;
    out["action_transitive"] = scene.action_transitive;
    out["generator_elements"] = scene.generator_elements;
  }
  return out;
}

nlohmann::json lattice_data_to_json(const WeightLatticeData& d) {
  return nlohmann::json{{"n", d.n},
                        {"rank", d.rank},
                        {"cartan", d.cartan},
                        {"root_basis", d.root_basis},
                        {"analytic_basis", d.anal_basis},
                        {"algebraic_basis", d.alg_basis},
                        {"analytic_index", d.anal_index},
                        {"algebraic_index", d.alg_index},
                        {"weyl_order", decimal_string(d.weyl_order)}};
}

}  // namespace cox
