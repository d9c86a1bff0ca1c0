#include "sgr/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgr/errors.hpp"
#include "sgr/predicates.hpp"

namespace sgr {

namespace {

struct HullFace {
  std::array<int, 3> v{};
  std::array<int, 3> nbr{-1, -1, -1};  // nbr[k] lies across edge (v[k], v[k+1])
  bool alive = true;
  std::vector<int> outside;
};

class QuickHull {
 public:
  explicit QuickHull(std::span<const Vec3> points) : pts_(points), horizon_slot_(points.size(), -1) {}

  std::vector<Face> run() {
    if (pts_.size() < 4) throw DomainError("convex hull needs at least 4 points");
    build_initial_simplex();
    for (std::size_t cursor = 0; cursor < faces_.size(); ++cursor) {
      // New faces are appended, so a single forward pass visits every face that ever gets points.
      while (faces_[cursor].alive && !faces_[cursor].outside.empty()) add_point(static_cast<int>(cursor));
    }
    std::vector<Face> out;
    for (const HullFace& f : faces_)
      if (f.alive) out.push_back({f.v[0], f.v[1], f.v[2]});
    return out;
  }

 private:
  int orient(const HullFace& f, int p) const { return orient3d(pts_[f.v[0]], pts_[f.v[1]], pts_[f.v[2]], pts_[p]); }

  double plane_distance(const HullFace& f, int p) const {
    const Vec3& a = pts_[f.v[0]];
    const Vec3 n = cross(pts_[f.v[1]] - a, pts_[f.v[2]] - a);
    return dot(n, pts_[p] - a);
  }

  void build_initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    int i0 = 0;
    for (int i = 1; i < n; ++i) {
      const Vec3& p = pts_[i];
      const Vec3& q = pts_[i0];
      if (p.x < q.x || (p.x == q.x && (p.y < q.y || (p.y == q.y && p.z < q.z)))) i0 = i;
    }
    int i1 = -1;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = norm2(pts_[i] - pts_[i0]);
      if (d > best) best = d, i1 = i;
    }
    if (i1 < 0) throw DomainError("convex hull: all points coincide");
    int i2 = -1;
    best = 0.0;
    const Vec3 axis = pts_[i1] - pts_[i0];
    for (int i = 0; i < n; ++i) {
      const double d = norm2(cross(axis, pts_[i] - pts_[i0]));
      if (d > best) best = d, i2 = i;
    }
    if (i2 < 0) throw DomainError("convex hull: all points collinear");
    int i3 = -1;
    best = 0.0;
    const Vec3 normal = cross(axis, pts_[i2] - pts_[i0]);
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(dot(normal, pts_[i] - pts_[i0]));
      if (d > best && orient3d(pts_[i0], pts_[i1], pts_[i2], pts_[i]) != 0) best = d, i3 = i;
    }
    if (i3 < 0) {
      for (int i = 0; i < n && i3 < 0; ++i)
        if (orient3d(pts_[i0], pts_[i1], pts_[i2], pts_[i]) != 0) i3 = i;
    }
    if (i3 < 0) throw DomainError("convex hull: all points coplanar");

    int a = i0, b = i1, c = i2;
    const int d = i3;
    if (orient3d(pts_[a], pts_[b], pts_[c], pts_[d]) > 0) std::swap(b, c);
    const std::array<std::array<int, 3>, 4> tris = {{{a, b, c}, {a, d, b}, {b, d, c}, {c, d, a}}};
    for (const auto& t : tris) {
      HullFace f;
      f.v = t;
      faces_.push_back(f);
    }
    // Wire neighbors by matching opposite directed edges.
    for (int f = 0; f < 4; ++f)
      for (int k = 0; k < 3; ++k) {
        const int p = faces_[f].v[k], q = faces_[f].v[(k + 1) % 3];
        for (int g = 0; g < 4; ++g)
          for (int m = 0; m < 3; ++m)
            if (faces_[g].v[m] == q && faces_[g].v[(m + 1) % 3] == p) faces_[f].nbr[k] = g;
      }
    for (int i = 0; i < n; ++i) {
      if (i == a || i == b || i == c || i == d) continue;
      for (int f = 0; f < 4; ++f)
        if (orient(faces_[f], i) > 0) {
          faces_[f].outside.push_back(i);
          break;
        }
    }
  }

  void add_point(int seed_face) {
    HullFace& seed = faces_[seed_face];
    int eye = seed.outside.front();
    double far = plane_distance(seed, eye);
    for (int p : seed.outside) {
      const double d = plane_distance(seed, p);
      if (d > far) far = d, eye = p;
    }

    // Visible region by flood fill from the seed face.
    visible_.clear();
    visible_.push_back(seed_face);
    mark_.resize(faces_.size(), 0);
    ++stamp_;
    if (stamp_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      stamp_ = 1;
    }
    mark_[seed_face] = stamp_;
    horizon_.clear();
    for (std::size_t head = 0; head < visible_.size(); ++head) {
      const int f = visible_[head];
      for (int k = 0; k < 3; ++k) {
        const int g = faces_[f].nbr[k];
        if (mark_[g] == stamp_) continue;
        if (orient(faces_[g], eye) > 0) {
          mark_[g] = stamp_;
          visible_.push_back(g);
        }
      }
    }
    for (int f : visible_)
      for (int k = 0; k < 3; ++k) {
        const int g = faces_[f].nbr[k];
        if (mark_[g] != stamp_) horizon_.push_back({faces_[f].v[k], faces_[f].v[(k + 1) % 3], g});
      }

    // One new face per horizon edge; link them around the eye through their start vertices.
    const int first_new = static_cast<int>(faces_.size());
    for (const HorizonEdge& e : horizon_) {
      if (horizon_slot_[e.a] >= 0) throw DomainError("convex hull: horizon is not a simple cycle");
      horizon_slot_[e.a] = static_cast<int>(faces_.size());
      HullFace nf;
      nf.v = {e.a, e.b, eye};
      nf.nbr[0] = e.outer;
      faces_.push_back(std::move(nf));
      HullFace& outer = faces_[e.outer];
      for (int m = 0; m < 3; ++m)
        if (outer.v[m] == e.b && outer.v[(m + 1) % 3] == e.a) outer.nbr[m] = horizon_slot_[e.a];
    }
    for (int nf = first_new; nf < static_cast<int>(faces_.size()); ++nf) {
      const int b = faces_[nf].v[1];
      const int next = horizon_slot_[b];
      if (next < 0) throw DomainError("convex hull: open horizon");
      faces_[nf].nbr[1] = next;
      faces_[next].nbr[2] = nf;
    }
    for (const HorizonEdge& e : horizon_) horizon_slot_[e.a] = -1;

    // Hand orphaned outside points to the new cone; points outside none of them are interior.
    for (int f : visible_) {
      faces_[f].alive = false;
      for (int p : faces_[f].outside) {
        if (p == eye) continue;
        for (int nf = first_new; nf < static_cast<int>(faces_.size()); ++nf)
          if (orient(faces_[nf], p) > 0) {
            faces_[nf].outside.push_back(p);
            break;
          }
      }
      std::vector<int>().swap(faces_[f].outside);
    }
    mark_.resize(faces_.size(), 0);
  }

  struct HorizonEdge {
    int a;
    int b;
    int outer;
  };

  std::span<const Vec3> pts_;
  std::vector<HullFace> faces_;
  std::vector<int> visible_;
  std::vector<HorizonEdge> horizon_;
  std::vector<int> horizon_slot_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
};

}  // namespace

std::vector<Face> convex_hull(std::span<const Vec3> points) { return QuickHull(points).run(); }

}  // namespace sgr
