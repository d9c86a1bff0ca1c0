#include "sgr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sgr/errors.hpp"

namespace sgr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 vmin(const Vec3& a, const Vec3& b) { return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)}; }
Vec3 vmax(const Vec3& a, const Vec3& b) { return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}; }

double box_distance2(const Vec3& p, const Vec3& lo, const Vec3& hi) {
  double d = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double v = p[k] < lo[k] ? lo[k] - p[k] : (p[k] > hi[k] ? p[k] - hi[k] : 0.0);
    d += v * v;
  }
  return d;
}

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + ab * (d1 / (d1 - d3));
  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + ac * (d2 / (d2 - d6));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double triangle_aspect_ratio(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double l0 = distance(b, c), l1 = distance(c, a), l2 = distance(a, b);
  const double area = 0.5 * norm(cross(b - a, c - a));
  if (!(area > 0.0)) return kInf;
  return std::max({l0, l1, l2}) * (l0 + l1 + l2) / (4.0 * std::sqrt(3.0) * area);
}

double normals_consistency(const TriangleMesh& mesh) {
  const FaceAdjacency adj = face_adjacency(mesh);
  std::vector<Vec3> normals(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    normals[f] = face_normal(mesh, f);
    if (norm2(normals[f]) == 0.0) throw DomainError("normals undefined: zero-area face " + std::to_string(f));
  }
  double total = 0.0;
  for (const auto& [f0, f1] : adj.pairs)
    total += 1.0 - dot(normals[f0], normals[f1]) / (norm(normals[f0]) * norm(normals[f1]));
  return total;
}

double laplacian_smoothing(const TriangleMesh& mesh) {
  const UniformLaplacian lap = uniform_laplacian(mesh);
  double total = 0.0;
  for (const Vec3& v : lap.apply(mesh.vertices)) total += norm2(v);
  return total;
}

double mean_edge_length(const TriangleMesh& mesh) {
  const auto edges = mesh_edges(mesh);
  if (edges.empty()) throw DomainError("mesh has no edges");
  double sum = 0.0;
  for (const auto& [a, b] : edges) sum += distance(mesh.vertices[a], mesh.vertices[b]);
  return sum / static_cast<double>(edges.size());
}

double edge_length_reg(const TriangleMesh& mesh, std::optional<double> e0) {
  const auto edges = mesh_edges(mesh);
  if (edges.empty()) throw DomainError("mesh has no edges");
  const double target = e0 ? *e0 : mean_edge_length(mesh);
  double sum = 0.0;
  for (const auto& [a, b] : edges) {
    const double d = distance(mesh.vertices[a], mesh.vertices[b]) - target;
    sum += d * d;
  }
  return sum / static_cast<double>(edges.size());
}

void RegWeights::validate() const {
  if (!(alpha_nor >= 0.0) || !(alpha_lap >= 0.0) || !(alpha_edg >= 0.0))
    throw std::invalid_argument("regularization weights must be non-negative");
  if (e0 && !(*e0 >= 0.0)) throw std::invalid_argument("e0 must be non-negative");
}

RegTerms geometric_reg_terms(const TriangleMesh& mesh, const RegWeights& w) {
  w.validate();
  RegTerms t;
  t.l_nor = normals_consistency(mesh);
  t.l_lap = laplacian_smoothing(mesh);
  t.l_edge = edge_length_reg(mesh, w.e0);
  t.total = w.alpha_nor * t.l_nor + w.alpha_lap * t.l_lap + w.alpha_edg * t.l_edge;
  return t;
}

double geometric_reg_total(const TriangleMesh& mesh, const RegWeights& w) { return geometric_reg_terms(mesh, w).total; }

AspectRatioStats aspect_ratio(const TriangleMesh& mesh) {
  AspectRatioStats st;
  st.per_face.reserve(mesh.faces.size());
  double sum = 0.0;
  for (const Face& f : mesh.faces) {
    const double q = triangle_aspect_ratio(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
    if (q == kInf) ++st.degenerate_count;
    st.per_face.push_back(q);
    sum += q;
    st.max = std::max(st.max, q);
  }
  st.mean = st.per_face.empty() ? 0.0 : sum / static_cast<double>(st.per_face.size());
  return st;
}

std::vector<Vec3> sample_surface(const TriangleMesh& mesh, std::size_t samples, std::uint64_t seed) {
  std::vector<double> cdf(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    total += face_area(mesh, f);
    cdf[f] = total;
  }
  if (!(total > 0.0)) throw DomainError("mesh has zero surface area");
  std::vector<Vec3> out(samples);
  const std::uint64_t stream = splitmix(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::uint64_t base = splitmix(stream ^ splitmix(k));
    const double pick = unit_double(splitmix(base ^ 1)) * total;
    const double r1 = std::sqrt(unit_double(splitmix(base ^ 2)));
    const double r2 = unit_double(splitmix(base ^ 3));
    std::size_t f = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), pick) - cdf.begin());
    f = std::min(f, cdf.size() - 1);
    const Face& t = mesh.faces[f];
    const Vec3 &a = mesh.vertices[t[0]], &b = mesh.vertices[t[1]], &c = mesh.vertices[t[2]];
    out[k] = a * (1.0 - r1) + b * (r1 * (1.0 - r2)) + c * (r1 * r2);
  }
  return out;
}

SurfaceDistance::SurfaceDistance(const TriangleMesh& mesh) {
  tris_.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) tris_.push_back({mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]});
  order_.resize(tris_.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!tris_.empty()) build(0, static_cast<int>(tris_.size()));
}

int SurfaceDistance::build(int begin, int end) {
  Node node;
  node.lo = {kInf, kInf, kInf};
  node.hi = {-kInf, -kInf, -kInf};
  for (int i = begin; i < end; ++i)
    for (const Vec3& v : tris_[order_[i]]) node.lo = vmin(node.lo, v), node.hi = vmax(node.hi, v);
  node.begin = begin;
  node.end = end;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= 4) return id;
  const Vec3 ext = node.hi - node.lo;
  const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&](int a, int b) {
    const double ca = tris_[a][0][axis] + tris_[a][1][axis] + tris_[a][2][axis];
    const double cb = tris_[b][0][axis] + tris_[b][1][axis] + tris_[b][2][axis];
    return ca < cb || (ca == cb && a < b);
  });
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double SurfaceDistance::operator()(const Vec3& p) const {
  if (nodes_.empty()) return kInf;
  double best = kInf;
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[stack[--top]];
    if (box_distance2(p, n.lo, n.hi) >= best) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        const auto& t = tris_[order_[i]];
        best = std::min(best, norm2(p - closest_on_triangle(p, t[0], t[1], t[2])));
      }
      continue;
    }
    const double dl = box_distance2(p, nodes_[n.left].lo, nodes_[n.left].hi);
    const double dr = box_distance2(p, nodes_[n.right].lo, nodes_[n.right].hi);
    // Nearer child on top of the stack.
    if (dl < dr) {
      stack[top++] = n.right;
      stack[top++] = n.left;
    } else {
      stack[top++] = n.left;
      stack[top++] = n.right;
    }
  }
  return std::sqrt(best);
}

SurfaceDistances surface_distances(const TriangleMesh& a, const TriangleMesh& b, std::size_t samples,
                                   std::uint64_t seed) {
  if (a.faces.empty() || b.faces.empty()) throw DomainError("distance metrics need non-empty meshes");
  SurfaceDistances d;
  const auto pa = sample_surface(a, samples, seed);
  const auto pb = sample_surface(b, samples, seed);
  const SurfaceDistance to_a(a), to_b(b);
  d.a_to_b.reserve(samples);
  d.b_to_a.reserve(samples);
  for (const Vec3& p : pa) d.a_to_b.push_back(to_b(p));
  for (const Vec3& p : pb) d.b_to_a.push_back(to_a(p));
  return d;
}

double chamfer_distance(const SurfaceDistances& d) {
  auto mean = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  return 0.5 * (mean(d.a_to_b) + mean(d.b_to_a));
}

double f_score(const SurfaceDistances& d, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  auto within = [tau](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const auto hits = std::count_if(v.begin(), v.end(), [tau](double x) { return x <= tau; });
    return static_cast<double>(hits) / static_cast<double>(v.size());
  };
  const double precision = within(d.a_to_b);
  const double recall = within(d.b_to_a);
  if (precision + recall == 0.0) return 0.0;
  return 200.0 * (precision * recall) / (precision + recall);
}

double chamfer_distance(const TriangleMesh& a, const TriangleMesh& b, std::size_t samples, std::uint64_t seed) {
  return chamfer_distance(surface_distances(a, b, samples, seed));
}

double f_score(const TriangleMesh& a, const TriangleMesh& b, double tau, std::size_t samples, std::uint64_t seed) {
  return f_score(surface_distances(a, b, samples, seed), tau);
}

MetricsReport single_mesh_metrics(const TriangleMesh& mesh, const RegWeights& weights) {
  MetricsReport r;
  const RegTerms terms = geometric_reg_terms(mesh, weights);
  r.l_nor = terms.l_nor;
  r.l_lap = terms.l_lap;
  r.l_edge = terms.l_edge;
  r.reg_total = terms.total;
  const AspectRatioStats ar = aspect_ratio(mesh);
  r.aspect_ratio_mean = ar.mean;
  r.aspect_ratio_max = ar.max;
  r.vertex_count = mesh.vertices.size();
  r.face_count = mesh.faces.size();
  r.weights = weights;
  return r;
}

std::string MetricsReport::to_key_value() const {
  std::ostringstream out;
  if (!label.empty()) out << "label: " << label << '\n';
  out << "vertices: " << vertex_count << '\n';
  out << "faces: " << face_count << '\n';
  out << "alpha_nor: " << fmt(weights.alpha_nor) << '\n';
  out << "alpha_lap: " << fmt(weights.alpha_lap) << '\n';
  out << "alpha_edg: " << fmt(weights.alpha_edg) << '\n';
  out << "l_nor: " << fmt(l_nor) << '\n';
  out << "l_lap: " << fmt(l_lap) << '\n';
  out << "l_edge: " << fmt(l_edge) << '\n';
  out << "reg_total: " << fmt(reg_total) << '\n';
  out << "aspect_ratio_mean: " << fmt(aspect_ratio_mean) << '\n';
  out << "aspect_ratio_max: " << fmt(aspect_ratio_max) << '\n';
  if (chamfer_mm) out << "chamfer_mm: " << fmt(*chamfer_mm) << '\n';
  if (f_score_pct) out << "f_score_pct: " << fmt(*f_score_pct) << '\n';
  if (tau_mm) out << "tau_mm: " << fmt(*tau_mm) << '\n';
  return out.str();
}

}  // namespace sgr
