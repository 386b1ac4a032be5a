// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/cone.hpp"

#include <cmath>

#include "core/nnls.hpp"

namespace gptmint {

struct Cone::Node {
  ConeKind kind;
  int dim = 0;
  Mat vecs;                   // PolyV generators / PolyH normals (columns)
  std::optional<Mat> alt;     // PolyV: known facet normals (optional)
  HermBasis basis;            // Psd
  std::vector<Cone> factors;  // Product (k), TensorMin/Max (2), DualOf (1)
  Mat tensor_vecs;            // TensorMin: pairwise generators; TensorMax: pairwise normals
};

namespace {

Mat pairwise_tensor(const Mat& a, const Mat& b) {
  const Eigen::Index da = a.rows(), db = b.rows();
  Mat out(da * db, a.cols() * b.cols());
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j, ++c) {
      for (Eigen::Index r = 0; r < da; ++r)
        out.block(r * db, c, db, 1) = a(r, i) * b.col(j);
    }
  }
  return out;
}

// Projection onto the conic hull of the columns of G.
Vec project_vcone(const Mat& G, const Vec& x) {
  if (G.cols() == 0) return Vec::Zero(x.size());
  NnlsResult r = nnls(G, x);
  return G * r.x;
}

}  // namespace

Cone Cone::orthant(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "orthant: dimension must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::Orthant;
  node->dim = n;
  return Cone(std::move(node));
}

Cone Cone::psd(int d) { return psd(HermBasis::canonical(d)); }

Cone Cone::psd(HermBasis basis) {
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::Psd;
  node->dim = basis.size();
  node->basis = std::move(basis);
  return Cone(std::move(node));
}

Cone Cone::polyhedral_v(Mat generators, int dim) {
  if (dim < 0) dim = static_cast<int>(generators.rows());
  require(generators.cols() == 0 || generators.rows() == dim,
          ErrorCode::InvalidArgument, "polyhedral_v: generator dimension mismatch");
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::PolyV;
  node->dim = dim;
  node->vecs = std::move(generators);
  if (node->vecs.rows() != dim) node->vecs = Mat(dim, 0);
  return Cone(std::move(node));
}

Cone Cone::polyhedral_h(Mat normals, int dim) {
  if (dim < 0) dim = static_cast<int>(normals.rows());
  require(normals.cols() == 0 || normals.rows() == dim,
          ErrorCode::InvalidArgument, "polyhedral_h: normal dimension mismatch");
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::PolyH;
  node->dim = dim;
  node->vecs = std::move(normals);
  if (node->vecs.rows() != dim) node->vecs = Mat(dim, 0);
  return Cone(std::move(node));
}

Cone Cone::polyhedral_vh(Mat generators, Mat normals) {
  require(generators.rows() == normals.rows(), ErrorCode::InvalidArgument,
          "polyhedral_vh: generator and normal dimensions must agree");
  int dim = static_cast<int>(generators.rows());
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::PolyV;
  node->dim = dim;
  node->vecs = std::move(generators);
  node->alt = std::move(normals);
  return Cone(std::move(node));
}

Cone Cone::zero(int dim) { return polyhedral_v(Mat(dim, 0), dim); }
Cone Cone::freespace(int dim) { return polyhedral_h(Mat(dim, 0), dim); }

Cone Cone::product(std::vector<Cone> factors) {
  require(!factors.empty(), ErrorCode::InvalidArgument,
          "product: needs at least one factor");
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::Product;
  node->dim = 0;
  for (const auto& f : factors) node->dim += f.dim();
  node->factors = std::move(factors);
  return Cone(std::move(node));
}

Cone Cone::tensor_min(const Cone& a, const Cone& b) {
  auto ga = a.maybe_generators();
  auto gb = b.maybe_generators();
  require(ga && ga->complete && gb && gb->complete, ErrorCode::Unsupported,
          "tensor_min: factors must be polyhedral with complete generators");
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::TensorMin;
  node->dim = a.dim() * b.dim();
  node->factors = {a, b};
  node->tensor_vecs = pairwise_tensor(ga->cols, gb->cols);
  return Cone(std::move(node));
}

Cone Cone::tensor_max(const Cone& a, const Cone& b) {
  auto ga = a.dual().maybe_generators();
  auto gb = b.dual().maybe_generators();
  require(ga && ga->complete && gb && gb->complete, ErrorCode::Unsupported,
          "tensor_max: factor duals must be polyhedral with complete generators");
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::TensorMax;
  node->dim = a.dim() * b.dim();
  node->factors = {a, b};
  node->tensor_vecs = pairwise_tensor(ga->cols, gb->cols);
  return Cone(std::move(node));
}

Cone Cone::dual_of(const Cone& inner) {
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::DualOf;
  node->dim = inner.dim();
  node->factors = {inner};
  return Cone(std::move(node));
}

ConeKind Cone::kind() const {
  require(node_ != nullptr, ErrorCode::Internal, "empty cone");
  return node_->kind;
}

int Cone::dim() const {
  require(node_ != nullptr, ErrorCode::Internal, "empty cone");
  return node_->dim;
}

const HermBasis& Cone::herm() const {
  require(kind() == ConeKind::Psd, ErrorCode::Unsupported, "herm: not a PSD cone");
  return node_->basis;
}

const Mat& Cone::vectors() const {
  require(kind() == ConeKind::PolyV || kind() == ConeKind::PolyH,
          ErrorCode::Unsupported, "vectors: not a polyhedral representation");
  return node_->vecs;
}

const std::vector<Cone>& Cone::factors() const {
  require(!node_->factors.empty(), ErrorCode::Unsupported, "factors: atomic cone");
  return node_->factors;
}

const Cone& Cone::inner() const {
  require(kind() == ConeKind::DualOf, ErrorCode::Unsupported, "inner: not DualOf");
  return node_->factors[0];
}

double Cone::distance(const Vec& x) const {
  require(x.size() == dim(), ErrorCode::InvalidArgument,
          "cone: vector dimension mismatch");
  switch (kind()) {
    case ConeKind::Orthant:
      return x.cwiseMin(0.0).norm();
    case ConeKind::Psd:
      return node_->basis.psd_distance(x);
    case ConeKind::PolyV: {
      if (node_->vecs.cols() == 0) return x.norm();
      return (x - project_vcone(node_->vecs, x)).norm();
    }
    case ConeKind::PolyH: {
      bool inside = true;
      for (Eigen::Index j = 0; j < node_->vecs.cols() && inside; ++j)
        if (node_->vecs.col(j).dot(x) < 0.0) inside = false;
      if (inside) return 0.0;
      return project_vcone(node_->vecs, -x).norm();
    }
    case ConeKind::Product: {
      double acc = 0.0;
      int off = 0;
      for (const auto& f : node_->factors) {
        double d = f.distance(x.segment(off, f.dim()));
        acc += d * d;
        off += f.dim();
      }
      return std::sqrt(acc);
    }
    case ConeKind::TensorMin:
      return (x - project_vcone(node_->tensor_vecs, x)).norm();
    case ConeKind::TensorMax: {
      bool inside = true;
      for (Eigen::Index j = 0; j < node_->tensor_vecs.cols() && inside; ++j)
        if (node_->tensor_vecs.col(j).dot(x) < 0.0) inside = false;
      if (inside) return 0.0;
      return project_vcone(node_->tensor_vecs, -x).norm();
    }
    case ConeKind::DualOf:
      // dist(x, K*) = ||P_K(-x)||
      return (node_->factors[0].project(-x)).norm();
  }
  fail(ErrorCode::Internal, "unreachable");
}

bool Cone::contains(const Vec& x, double tol) const {
  require(tol >= 0.0, ErrorCode::InvalidArgument, "contains: tol must be >= 0");
  return distance(x) <= tol;
}

Vec Cone::project(const Vec& x) const {
  require(x.size() == dim(), ErrorCode::InvalidArgument,
          "cone: vector dimension mismatch");
  switch (kind()) {
    case ConeKind::Orthant:
      return x.cwiseMax(0.0);
    case ConeKind::Psd:
      return node_->basis.project_psd(x);
    case ConeKind::PolyV:
      return project_vcone(node_->vecs, x);
    case ConeKind::PolyH: {
      bool inside = true;
      for (Eigen::Index j = 0; j < node_->vecs.cols() && inside; ++j)
        if (node_->vecs.col(j).dot(x) < 0.0) inside = false;
      if (inside) return x;
      // Moreau from the dual V-cone
      return x + project_vcone(node_->vecs, -x);
    }
    case ConeKind::Product: {
      Vec out(dim());
      int off = 0;
      for (const auto& f : node_->factors) {
        out.segment(off, f.dim()) = f.project(x.segment(off, f.dim()));
        off += f.dim();
      }
      return out;
    }
    case ConeKind::TensorMin:
      return project_vcone(node_->tensor_vecs, x);
    case ConeKind::TensorMax:
      return x + project_vcone(node_->tensor_vecs, -x);
    case ConeKind::DualOf:
      return x + node_->factors[0].project(-x);
  }
  fail(ErrorCode::Internal, "unreachable");
}

Cone Cone::dual() const {
  switch (kind()) {
    case ConeKind::Orthant:
    case ConeKind::Psd:
      return *this;  // self-dual under the chosen inner products
    case ConeKind::PolyV:
      if (node_->alt) return polyhedral_vh(*node_->alt, node_->vecs);
      return polyhedral_h(node_->vecs, node_->dim);
    case ConeKind::PolyH:
      return polyhedral_v(node_->vecs, node_->dim);
    case ConeKind::Product: {
      std::vector<Cone> duals;
      duals.reserve(node_->factors.size());
      for (const auto& f : node_->factors) duals.push_back(f.dual());
      return product(std::move(duals));
    }
    case ConeKind::TensorMin:
      return tensor_max(node_->factors[0].dual(), node_->factors[1].dual());
    case ConeKind::TensorMax:
      return tensor_min(node_->factors[0].dual(), node_->factors[1].dual());
    case ConeKind::DualOf:
      return node_->factors[0];
  }
  fail(ErrorCode::Internal, "unreachable");
}

bool Cone::strictly_contains(const Vec& x, double margin) const {
  require(margin > 0.0, ErrorCode::InvalidArgument,
          "strictly_contains: margin must be > 0");
  require(x.size() == dim(), ErrorCode::InvalidArgument,
          "cone: vector dimension mismatch");
  const double nx = x.norm();
  switch (kind()) {
    case ConeKind::Orthant:
      return nx > 0.0 && x.minCoeff() >= margin * nx;
    case ConeKind::Psd:
      return node_->basis.min_eigenvalue(x) >= margin;
    case ConeKind::PolyH: {
      if (node_->vecs.cols() == 0) return true;  // free cone
      if (nx == 0.0) return false;
      for (Eigen::Index j = 0; j < node_->vecs.cols(); ++j) {
        double nn = node_->vecs.col(j).norm();
        if (nn == 0.0) continue;
        if (node_->vecs.col(j).dot(x) < margin * nx * nn) return false;
      }
      return true;
    }
    case ConeKind::TensorMax: {
      for (Eigen::Index j = 0; j < node_->tensor_vecs.cols(); ++j) {
        double nn = node_->tensor_vecs.col(j).norm();
        if (nn == 0.0) continue;
        if (node_->tensor_vecs.col(j).dot(x) / nn < margin) return false;
      }
      return true;
    }
    case ConeKind::DualOf: {
      auto g = node_->factors[0].maybe_generators();
      require(g && g->complete, ErrorCode::Unsupported,
              "strictly_contains: DualOf needs complete generators of the "
              "pre-dual cone");
      for (Eigen::Index j = 0; j < g->cols.cols(); ++j) {
        double nn = g->cols.col(j).norm();
        if (nn == 0.0) continue;
        if (g->cols.col(j).dot(x) / nn < margin) return false;
      }
      return true;
    }
    case ConeKind::PolyV:
    case ConeKind::TensorMin: {
      // interior decided through the dual H-representation implicitly:
      // the coordinate cross-polytope of radius margin must stay inside.
      const double tol = 1e-10 * std::max(1.0, nx);
      if (!contains(x, tol)) return false;
      Vec probe = x;
      for (int j = 0; j < dim(); ++j) {
        probe[j] = x[j] + margin;
        if (!contains(probe, tol)) return false;
        probe[j] = x[j] - margin;
        if (!contains(probe, tol)) return false;
        probe[j] = x[j];
      }
      return true;
    }
    case ConeKind::Product: {
      int off = 0;
      for (const auto& f : node_->factors) {
        if (f.dim() > 0 && !f.strictly_contains(x.segment(off, f.dim()), margin))
          return false;
        off += f.dim();
      }
      return true;
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

bool Cone::has_complete_generators() const {
  auto g = maybe_generators();
  return g && g->complete;
}

std::optional<GeneratorSet> Cone::maybe_generators() const {
  switch (kind()) {
    case ConeKind::Orthant:
      return GeneratorSet{Mat::Identity(dim(), dim()), true};
    case ConeKind::PolyV:
      return GeneratorSet{node_->vecs, true};
    case ConeKind::TensorMin:
      return GeneratorSet{node_->tensor_vecs, true};
    case ConeKind::Psd: {
      auto span = node_->basis.rank_one_spanning();
      Mat g(dim(), static_cast<Eigen::Index>(span.size()));
      for (size_t k = 0; k < span.size(); ++k)
        g.col(static_cast<Eigen::Index>(k)) = span[k];
      return GeneratorSet{std::move(g), false};
    }
    case ConeKind::Product: {
      int total = 0;
      std::vector<GeneratorSet> parts;
      bool complete = true;
      for (const auto& f : node_->factors) {
        auto g = f.maybe_generators();
        if (!g) return std::nullopt;
        complete = complete && g->complete;
        total += static_cast<int>(g->cols.cols());
        parts.push_back(std::move(*g));
      }
      Mat g = Mat::Zero(dim(), total);
      int coff = 0, roff = 0;
      for (size_t i = 0; i < parts.size(); ++i) {
        int r = node_->factors[i].dim();
        int c = static_cast<int>(parts[i].cols.cols());
        g.block(roff, coff, r, c) = parts[i].cols;
        coff += c;
        roff += r;
      }
      return GeneratorSet{std::move(g), complete};
    }
    case ConeKind::PolyH:
    case ConeKind::TensorMax:
    case ConeKind::DualOf:
      return std::nullopt;
  }
  return std::nullopt;
}

Mat Cone::generators() const {
  auto g = maybe_generators();
  require(g.has_value() && g->complete, ErrorCode::Unsupported,
          "generators: unsupported for this representation (dualise first)");
  return g->cols;
}

Mat Cone::sample_generators() const {
  auto g = maybe_generators();
  require(g.has_value(), ErrorCode::Unsupported,
          "sample_generators: no finite generating sample available");
  return g->cols;
}

std::vector<ConeBlock> Cone::primitive_blocks() const {
  std::vector<ConeBlock> out;
  if (kind() == ConeKind::Product) {
    int off = 0;
    for (const auto& f : node_->factors) {
      for (auto& b : f.primitive_blocks()) out.push_back({off + b.offset, b.cone});
      off += f.dim();
    }
  } else {
    out.push_back({0, *this});
  }
  return out;
}

bool Cone::is_polyhedral() const {
  switch (kind()) {
    case ConeKind::Orthant:
    case ConeKind::PolyV:
    case ConeKind::PolyH:
    case ConeKind::TensorMin:
    case ConeKind::TensorMax:
      return true;
    case ConeKind::Psd:
      return node_->basis.matrix_dim() <= 1;
    case ConeKind::Product: {
      for (const auto& f : node_->factors)
        if (!f.is_polyhedral()) return false;
      return true;
    }
    case ConeKind::DualOf:
      return node_->factors[0].is_polyhedral();
  }
  return false;
}

bool Cone::equal_rep(const Cone& other, double tol) const {
  if (kind() != other.kind() || dim() != other.dim()) return false;
  switch (kind()) {
    case ConeKind::Orthant:
      return true;
    case ConeKind::Psd:
      return node_->basis.matrix_dim() == other.node_->basis.matrix_dim();
    case ConeKind::PolyV:
    case ConeKind::PolyH:
      return node_->vecs.cols() == other.node_->vecs.cols() &&
             (node_->vecs.cols() == 0 ||
              (node_->vecs - other.node_->vecs).cwiseAbs().maxCoeff() <= tol);
    case ConeKind::Product:
    case ConeKind::TensorMin:
    case ConeKind::TensorMax:
    case ConeKind::DualOf: {
      if (node_->factors.size() != other.node_->factors.size()) return false;
      for (size_t i = 0; i < node_->factors.size(); ++i)
        if (!node_->factors[i].equal_rep(other.node_->factors[i], tol))
          return false;
      return true;
    }
  }
  return false;
}

}  // namespace gptmint
