// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace gptmint {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

HermBasis HermBasis::canonical(int d) {
  require(d >= 1, ErrorCode::InvalidArgument, "HermBasis: d must be >= 1");
  HermBasis b;
  b.d_ = d;
  b.elems_.reserve(static_cast<size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    HermBasisElem e;
    e.entries.push_back({j, j, {1.0, 0.0}});
    e.conj_sign = 1.0;
    b.elems_.push_back(std::move(e));
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      HermBasisElem x;
      x.entries.push_back({j, k, {kInvSqrt2, 0.0}});
      x.entries.push_back({k, j, {kInvSqrt2, 0.0}});
      x.conj_sign = 1.0;
      b.elems_.push_back(std::move(x));
      HermBasisElem y;
      y.entries.push_back({j, k, {0.0, kInvSqrt2}});
      y.entries.push_back({k, j, {0.0, -kInvSqrt2}});
      y.conj_sign = -1.0;
      b.elems_.push_back(std::move(y));
    }
  }
  return b;
}

HermBasis HermBasis::kron(const HermBasis& a, const HermBasis& b) {
  HermBasis out;
  out.d_ = a.d_ * b.d_;
  out.elems_.reserve(a.elems_.size() * b.elems_.size());
  for (const auto& ea : a.elems_) {
    for (const auto& eb : b.elems_) {
      HermBasisElem e;
      e.conj_sign = ea.conj_sign * eb.conj_sign;
      e.entries.reserve(ea.entries.size() * eb.entries.size());
      for (const auto& pa : ea.entries) {
        for (const auto& pb : eb.entries) {
          e.entries.push_back({pa.row * b.d_ + pb.row, pa.col * b.d_ + pb.col,
                               pa.val * pb.val});
        }
      }
      out.elems_.push_back(std::move(e));
    }
  }
  return out;
}

CMat HermBasis::matrix(const Vec& coords) const {
  require(coords.size() == size(), ErrorCode::InvalidArgument,
          "HermBasis::matrix: coordinate dimension mismatch");
  CMat m = CMat::Zero(d_, d_);
  for (int k = 0; k < size(); ++k) {
    double c = coords[k];
    if (c == 0.0) continue;
    for (const auto& p : elems_[k].entries) m(p.row, p.col) += c * p.val;
  }
  return m;
}

Vec HermBasis::coords(const CMat& m) const {
  require(m.rows() == d_ && m.cols() == d_, ErrorCode::InvalidArgument,
          "HermBasis::coords: matrix dimension mismatch");
  Vec x(size());
  for (int k = 0; k < size(); ++k) {
    std::complex<double> acc = 0.0;
    for (const auto& p : elems_[k].entries) acc += p.val * m(p.col, p.row);
    x[k] = acc.real();  // tr(B_k M), real for Hermitian M
  }
  return x;
}

Vec HermBasis::project_psd(const Vec& coords) const {
  CMat m = matrix(coords);
  Eigen::SelfAdjointEigenSolver<CMat> eig(m);
  const auto& vals = eig.eigenvalues();
  if (vals[0] >= 0.0) return coords;
  CMat clamped = CMat::Zero(d_, d_);
  for (int i = 0; i < d_; ++i) {
    if (vals[i] > 0.0)
      clamped += vals[i] * eig.eigenvectors().col(i) *
                 eig.eigenvectors().col(i).adjoint();
  }
  return this->coords(clamped);
}

double HermBasis::min_eigenvalue(const Vec& coords) const {
  Eigen::SelfAdjointEigenSolver<CMat> eig(matrix(coords),
                                          Eigen::EigenvaluesOnly);
  return eig.eigenvalues()[0];
}

double HermBasis::psd_distance(const Vec& coords) const {
  Eigen::SelfAdjointEigenSolver<CMat> eig(matrix(coords),
                                          Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (int i = 0; i < d_; ++i) {
    double v = eig.eigenvalues()[i];
    if (v < 0.0) acc += v * v;
  }
  return std::sqrt(acc);
}

std::vector<Vec> HermBasis::rank_one_spanning() const {
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(d_) * d_);
  auto push = [&](const Eigen::VectorXcd& v) {
    out.push_back(coords(v * v.adjoint()));
  };
  for (int j = 0; j < d_; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d_);
    v[j] = 1.0;
    push(v);
  }
  for (int j = 0; j < d_; ++j) {
    for (int k = j + 1; k < d_; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d_);
      v[j] = kInvSqrt2;
      v[k] = kInvSqrt2;
      push(v);
      v[k] = std::complex<double>(0.0, kInvSqrt2);
      push(v);
    }
  }
  return out;
}

}  // namespace gptmint
