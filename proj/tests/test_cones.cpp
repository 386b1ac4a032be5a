// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <random>

#include "core/cone.hpp"
#include "core/nnls.hpp"

using namespace gptmint;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Mat cols2(const Vec& a, const Vec& b) {
  Mat m(a.size(), 2);
  m.col(0) = a;
  m.col(1) = b;
  return m;
}

// Exact membership oracle for a two-generator cone in the plane: solve the
// 2x2 weight system by hand.
bool two_gen_member(const Vec& g1, const Vec& g2, const Vec& x, double tol) {
  double det = g1[0] * g2[1] - g1[1] * g2[0];
  if (std::abs(det) < 1e-14) {
    // degenerate: test each ray
    auto on_ray = [&](const Vec& g) {
      double t = g.dot(x) / g.squaredNorm();
      return t >= -tol && (x - t * g).norm() <= tol;
    };
    return x.norm() <= tol || on_ray(g1) || on_ray(g2);
  }
  double a = (x[0] * g2[1] - x[1] * g2[0]) / det;
  double b = (g1[0] * x[1] - g1[1] * x[0]) / det;
  return a >= -tol && b >= -tol;
}

// Projection oracle for a two-generator planar cone: try the interior LS
// solution, both rays and the apex, keep the nearest feasible point.
Vec two_gen_project(const Vec& g1, const Vec& g2, const Vec& x) {
  std::vector<Vec> candidates;
  Mat g = cols2(g1, g2);
  Mat gtg = g.transpose() * g;
  Vec lam = gtg.ldlt().solve(g.transpose() * x);
  if (lam.minCoeff() >= 0.0) candidates.push_back(g * lam);
  for (const Vec& ray : {g1, g2}) {
    double t = std::max(0.0, ray.dot(x) / ray.squaredNorm());
    candidates.push_back(t * ray);
  }
  candidates.push_back(Vec::Zero(2));
  Vec best = candidates[0];
  for (const auto& c : candidates)
    if ((x - c).norm() < (x - best).norm()) best = c;
  return best;
}

std::vector<Cone> variant_zoo() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat vr(4, 6);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) vr(i, j) = g(rng);
  // keep the random polyhedral cones pointed-ish
  vr.row(0) = vr.row(0).cwiseAbs() + Vec::Ones(6).transpose();
  Mat tri(2, 3);
  tri << 1.0, 1.0, 1.0, -0.8, 0.1, 0.9;
  // facet normals of the planar cone spanned by (1,-0.8) and (1,0.9)
  Mat tri_normals(2, 2);
  tri_normals << 0.8, 0.9, 1.0, -1.0;
  Cone tri_cone = Cone::polyhedral_vh(tri, tri_normals);
  std::vector<Cone> zoo;
  zoo.push_back(Cone::orthant(5));
  zoo.push_back(Cone::psd(2));
  zoo.push_back(Cone::psd(3));
  zoo.push_back(Cone::polyhedral_v(vr));
  zoo.push_back(Cone::polyhedral_h(vr));
  zoo.push_back(Cone::product({Cone::orthant(2), Cone::psd(2),
                               Cone::polyhedral_v(tri)}));
  zoo.push_back(Cone::tensor_min(Cone::orthant(2), tri_cone));
  zoo.push_back(Cone::tensor_max(Cone::orthant(2), tri_cone));
  zoo.push_back(Cone::dual_of(Cone::polyhedral_v(tri)));
  return zoo;
}

}  // namespace

TEST_CASE("nnls satisfies its first-order conditions") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 3 + static_cast<int>(rng() % 5);
    int n = 2 + static_cast<int>(rng() % 6);
    Mat a(m, n);
    Vec b(m);
    for (int i = 0; i < m; ++i) {
      b[i] = g(rng);
      for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    }
    NnlsResult r = nnls(a, b);
    REQUIRE(r.x.minCoeff() >= 0.0);
    Vec w = a.transpose() * (b - a * r.x);
    for (int j = 0; j < n; ++j) {
      if (r.x[j] > 1e-10) {
        CHECK(std::abs(w[j]) < 1e-8);
      } else {
        CHECK(w[j] < 1e-8);
      }
    }
  }
}

TEST_CASE("membership on the documented cases") {
  CHECK(Cone::orthant(2).contains(v2(1.0, 0.0), 1e-9));

  Vec diag_pm(4);  // diag(1, -1) in the canonical basis
  diag_pm << 1.0, -1.0, 0.0, 0.0;
  CHECK_FALSE(Cone::psd(2).contains(diag_pm, 1e-9));

  Cone k = Cone::polyhedral_v(cols2(v2(1, 0), v2(1, 1)));
  // oracle: 2 = a + b, 1 = b has the nonnegative solution a = b = 1
  CHECK(two_gen_member(v2(1, 0), v2(1, 1), v2(2, 1), 1e-12));
  CHECK(k.contains(v2(2, 1), 1e-9));
  CHECK_FALSE(k.contains(v2(-1, 0), 1e-9));

  CHECK_THROWS_AS(k.contains(Vec::Zero(3), 1e-9), Error);
}

TEST_CASE("strict interior on the documented cases") {
  CHECK(Cone::orthant(2).strictly_contains(v2(1, 1), 0.5));
  CHECK_FALSE(Cone::orthant(2).strictly_contains(v2(1, 0), 1e-6));

  Cone dual = Cone::dual_of(Cone::polyhedral_v(cols2(v2(1, 0), v2(0, 1))));
  // oracle: min_g <x, g> over the unit generators equals 1
  CHECK(dual.strictly_contains(v2(1, 1), 0.5));
  CHECK_FALSE(dual.strictly_contains(v2(1, -0.1), 1e-3));
}

TEST_CASE("duals are analytic and the double dual returns the set") {
  CHECK(Cone::orthant(3).dual().kind() == ConeKind::Orthant);
  CHECK(Cone::psd(2).dual().kind() == ConeKind::Psd);

  Cone k = Cone::polyhedral_v(cols2(v2(1, 0), v2(1, 1)));
  Cone kd = k.dual();
  CHECK(kd.kind() == ConeKind::PolyH);
  CHECK((kd.vectors() - k.vectors()).norm() == 0.0);

  Cone kdd = kd.dual();
  for (double x = -2.0; x <= 2.0; x += 0.25) {
    for (double y = -2.0; y <= 2.0; y += 0.25) {
      bool oracle = two_gen_member(v2(1, 0), v2(1, 1), v2(x, y), 1e-9);
      CHECK(kdd.contains(v2(x, y), 1e-9) == oracle);
      CHECK(k.contains(v2(x, y), 1e-9) == oracle);
    }
  }
}

TEST_CASE("projections on the documented cases") {
  CHECK((Cone::orthant(2).project(v2(1, -2)) - v2(1, 0)).norm() < 1e-15);

  Vec diag_pm(4);
  diag_pm << 1.0, -1.0, 0.0, 0.0;
  Vec diag_clamped(4);
  diag_clamped << 1.0, 0.0, 0.0, 0.0;
  CHECK((Cone::psd(2).project(diag_pm) - diag_clamped).norm() < 1e-12);

  Cone k = Cone::polyhedral_v(cols2(v2(1, 0), v2(1, 1)));
  Vec oracle = two_gen_project(v2(1, 0), v2(1, 1), v2(0, 1));
  CHECK((oracle - v2(0.5, 0.5)).norm() < 1e-12);
  CHECK((k.project(v2(0, 1)) - oracle).norm() < 1e-10);
}

TEST_CASE("generator queries") {
  Mat g = Cone::orthant(2).generators();
  CHECK(g.cols() == 2);
  CHECK((g - Mat::Identity(2, 2)).norm() == 0.0);

  CHECK(Cone::psd(2).dim() == 4);
  CHECK_FALSE(Cone::psd(2).has_complete_generators());
  CHECK(Cone::psd(2).sample_generators().cols() == 4);

  Cone tm = Cone::tensor_min(Cone::orthant(2), Cone::orthant(2));
  CHECK(tm.generators().cols() == 4);

  CHECK_THROWS_AS(Cone::polyhedral_h(Mat::Identity(2, 2)).generators(), Error);
  CHECK_THROWS_AS(Cone::dual_of(Cone::polyhedral_h(Mat::Identity(2, 2)))
                      .generators(),
                  Error);
}

TEST_CASE("Moreau decomposition, idempotence and membership consistency") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const Cone& k : variant_zoo()) {
    Cone polar_src = k.dual();
    for (int trial = 0; trial < 1000; ++trial) {
      Vec x(k.dim());
      for (int i = 0; i < k.dim(); ++i) x[i] = 2.0 * g(rng);
      Vec p = k.project(x);
      Vec q = -polar_src.project(-x);  // projection onto the polar cone
      CHECK((x - (p + q)).norm() <= 1e-8);
      CHECK(std::abs(p.dot(q)) <= 1e-8);
      CHECK((k.project(p) - p).norm() <= 1e-10);
      bool member = k.contains(x, 1e-7);
      CHECK(member == ((x - p).norm() <= 1e-7));
    }
  }
}

TEST_CASE("double dual agrees with the cone on random points") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int inst = 0; inst < 10; ++inst) {
    int dim = 2 + static_cast<int>(rng() % 3);
    int ngen = 2 + static_cast<int>(rng() % 7);
    Mat gens(dim, ngen);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < ngen; ++j) gens(i, j) = g(rng);
    Cone k = Cone::polyhedral_v(gens);
    Cone kdd = k.dual().dual();
    for (int trial = 0; trial < 200; ++trial) {
      Vec x(dim);
      for (int i = 0; i < dim; ++i) x[i] = 2.0 * g(rng);
      // agreement away from the boundary fuzz
      double d = k.distance(x);
      if (d > 1e-6) {
        CHECK_FALSE(kdd.contains(x, 1e-7));
      } else if (d < 1e-9) {
        CHECK(kdd.contains(x, 1e-7));
      }
    }
  }
}

namespace {

// sound Euclidean clearance implied by strictly_contains(k, x, m), per the
// documented per-representation semantics
double clearance_radius(const Cone& k, const Vec& x, double m) {
  switch (k.kind()) {
    case ConeKind::Orthant:
    case ConeKind::PolyH:
      return m * x.norm();
    case ConeKind::Psd:
    case ConeKind::DualOf:
    case ConeKind::TensorMax:
      return m;
    case ConeKind::PolyV:
    case ConeKind::TensorMin:
      return m / std::sqrt(static_cast<double>(k.dim()));
    case ConeKind::Product: {
      double r = std::numeric_limits<double>::infinity();
      int off = 0;
      for (const auto& f : k.factors()) {
        r = std::min(r, clearance_radius(f, x.segment(off, f.dim()), m));
        off += f.dim();
      }
      return r;
    }
  }
  return 0.0;
}

}  // namespace

TEST_CASE("strict interior implies membership with clearance") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const Cone& k : variant_zoo()) {
    auto gens = k.maybe_generators();
    for (int trial = 0; trial < 40; ++trial) {
      Vec x(k.dim());
      for (int i = 0; i < k.dim(); ++i) x[i] = gauss(rng);
      x = k.project(x);
      double m = 1e-3;
      if (!k.strictly_contains(x, m)) continue;
      CHECK(k.contains(x, 1e-9));
      if (!gens) continue;
      double radius = clearance_radius(k, x, m);
      for (Eigen::Index j = 0; j < gens->cols.cols(); ++j) {
        double gn = gens->cols.col(j).norm();
        if (gn < 1e-12) continue;
        double eps = 0.9 * radius / gn;
        CHECK(k.contains(x - eps * gens->cols.col(j), 1e-9));
      }
    }
  }
}

TEST_CASE("zero and free cones behave as the empty polyhedral forms") {
  Cone z = Cone::zero(3);
  Cone f = Cone::freespace(3);
  CHECK(z.contains(Vec::Zero(3), 0.0));
  CHECK_FALSE(z.contains(Vec::Ones(3), 1e-3));
  CHECK(f.contains(Vec::Ones(3), 0.0));
  CHECK(z.dual().equal_rep(f));
  CHECK(f.dual().equal_rep(z));
  CHECK((z.project(Vec::Ones(3))).norm() == 0.0);
  CHECK((f.project(Vec::Ones(3)) - Vec::Ones(3)).norm() == 0.0);
  CHECK(f.strictly_contains(Vec::Zero(3), 1.0));
  CHECK_FALSE(z.strictly_contains(Vec::Zero(3), 1e-6));
}

TEST_CASE("scale invariance of membership") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const Cone& k : variant_zoo()) {
    for (int trial = 0; trial < 50; ++trial) {
      Vec x(k.dim());
      for (int i = 0; i < k.dim(); ++i) x[i] = g(rng);
      x = k.project(x);
      CHECK(k.contains(0.5 * x, 1e-7));
      CHECK(k.contains(3.0 * x, 1e-6));
      CHECK(k.contains(Vec::Zero(k.dim()), 0.0));
    }
  }
}
