// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/theories.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gptmint {

namespace {

bool check_no_restriction(const System& s, double tol = 1e-9) {
  // dual state generators inside the effect cone and effect samples inside
  // the dual of the state cone
  for (Eigen::Index j = 0; j < s.dual_state_generators.cols(); ++j)
    if (!s.effect_cone.contains(s.dual_state_generators.col(j), tol))
      return false;
  Mat eff = s.effect_cone.sample_generators();
  Cone dual_state = s.state_cone.dual();
  for (Eigen::Index j = 0; j < eff.cols(); ++j)
    if (!dual_state.contains(eff.col(j), tol)) return false;
  return true;
}

}  // namespace

TheoryDescriptor classical(int n) {
  require(n >= 2, ErrorCode::InvalidArgument, "classical: n must be >= 2");
  TheoryDescriptor t;
  std::ostringstream name;
  name << "classical:" << n;
  t.name = name.str();
  System& s = t.system;
  s.label = t.name;
  s.kind = TheoryKind::Classical;
  s.dim = n;
  s.state_cone = Cone::orthant(n);
  s.effect_cone = Cone::orthant(n);
  s.unit_effect = Vec::Ones(n);
  s.state_generators = Mat::Identity(n, n);
  s.dual_state_generators = Mat::Identity(n, n);
  validate_system(s);
  t.no_restriction = check_no_restriction(s);
  return t;
}

TheoryDescriptor quantum(int d) {
  require(d >= 2, ErrorCode::InvalidArgument, "quantum: d must be >= 2");
  TheoryDescriptor t;
  std::ostringstream name;
  name << "quantum:" << d;
  t.name = name.str();
  System& s = t.system;
  s.label = t.name;
  s.kind = TheoryKind::Quantum;
  s.herm = HermBasis::canonical(d);
  s.dim = s.herm->size();
  s.state_cone = Cone::psd(*s.herm);
  s.effect_cone = s.state_cone;
  s.unit_effect = s.herm->coords(CMat::Identity(d, d));
  auto span = s.herm->rank_one_spanning();
  Mat gens(s.dim, static_cast<Eigen::Index>(span.size()));
  for (size_t k = 0; k < span.size(); ++k)
    gens.col(static_cast<Eigen::Index>(k)) = span[k];
  s.state_generators = gens;
  s.dual_state_generators = std::move(gens);
  validate_system(s);
  t.no_restriction = true;  // PSD is self-dual in these coordinates
  return t;
}

namespace {

Mat polygon_vertices(int n, double radius, double phase) {
  Mat m(3, n);
  for (int i = 0; i < n; ++i) {
    double th = phase + 2.0 * std::numbers::pi * i / n;
    m.col(i) << 1.0, radius * std::cos(th), radius * std::sin(th);
  }
  return m;
}

System square_system(const std::string& label, double radius, double phase) {
  System s;
  s.label = label;
  s.kind = TheoryKind::Polyhedral;
  s.dim = 3;
  s.state_generators = polygon_vertices(4, radius, phase);
  // dual of a square cone: the polar square, rotated a quarter step
  double dual_radius = 1.0 / (radius * std::cos(std::numbers::pi / 4));
  s.dual_state_generators =
      polygon_vertices(4, dual_radius, phase + std::numbers::pi / 4);
  s.state_cone = Cone::polyhedral_vh(s.state_generators, s.dual_state_generators);
  s.effect_cone = Cone::polyhedral_vh(s.dual_state_generators, s.state_generators);
  s.unit_effect = Vec::Zero(3);
  s.unit_effect[0] = 1.0;
  return s;
}

}  // namespace

TheoryDescriptor gbit() {
  TheoryDescriptor t;
  t.name = "gbit";
  t.system = square_system("gbit", std::sqrt(2.0), std::numbers::pi / 4);
  validate_system(t.system);
  t.no_restriction = check_no_restriction(t.system);
  return t;
}

TheoryDescriptor polygon(int n, bool restricted_effects) {
  require(n >= 3, ErrorCode::InvalidArgument, "polygon: n must be >= 3");
  TheoryDescriptor t;
  std::ostringstream name;
  name << "polygon:" << n << (restricted_effects ? ":restricted" : "");
  t.name = name.str();
  System& s = t.system;
  s.label = t.name;
  s.kind = TheoryKind::Polyhedral;
  s.dim = 3;
  const double r = std::sqrt(1.0 / std::cos(std::numbers::pi / n));
  s.state_generators = polygon_vertices(n, r, 0.0);
  s.unit_effect = Vec::Zero(3);
  s.unit_effect[0] = 1.0;
  // facet normals of the n-gon cone: the polar n-gon, shifted half a step
  const double rd = 1.0 / (r * std::cos(std::numbers::pi / n));
  s.dual_state_generators =
      polygon_vertices(n, rd, std::numbers::pi * (1.0 + 1.0 / n));
  s.state_cone =
      Cone::polyhedral_vh(s.state_generators, s.dual_state_generators);
  if (!restricted_effects) {
    s.effect_cone =
        Cone::polyhedral_vh(s.dual_state_generators, s.state_generators);
  } else {
    // exposing effects, their complements and the unit effect
    const double denom = 2.0 + r * r;
    Mat gens(3, 2 * n + 1);
    for (int i = 0; i < n; ++i) {
      Vec e = (s.unit_effect + s.state_generators.col(i)) / denom;
      gens.col(i) = e;
      gens.col(n + i) = s.unit_effect - e;
    }
    gens.col(2 * n) = s.unit_effect;
    s.effect_cone = Cone::polyhedral_v(std::move(gens));
    s.restricted = true;
  }
  validate_system(s);
  t.no_restriction = check_no_restriction(s);
  require(t.no_restriction == !restricted_effects, ErrorCode::Internal,
          "polygon: no-restriction check does not match the construction");
  return t;
}

TheoryDescriptor theory_from_ref(const std::string& ref) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : ref) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  const std::string& head = parts[0];
  auto param = [&](size_t i) -> int {
    require(parts.size() > i, ErrorCode::InvalidArgument,
            "theory reference '" + ref + "' is missing a parameter");
    return std::stoi(parts[i]);
  };
  if (head == "classical") return classical(param(1));
  if (head == "quantum") return quantum(param(1));
  if (head == "gbit") return gbit();
  if (head == "polygon") {
    bool restricted = parts.size() > 2 && parts[2] == "restricted";
    return polygon(param(1), restricted);
  }
  fail(ErrorCode::InvalidArgument, "unknown theory reference '" + ref + "'");
}

namespace {

Vec pure_state_coords(const HermBasis& basis, const Eigen::VectorXcd& psi) {
  return basis.coords(psi * psi.adjoint());
}

BankStrategy exposing_strategy(const System& sys, const std::vector<int>& which,
                               const Vec& probs) {
  // effect (u + w_i)/(1 + <w_i, w_i>) accepts exactly w_i among causal states
  BankStrategy s;
  s.system = sys;
  for (size_t k = 0; k < which.size(); ++k) {
    Vec w = sys.state_generators.col(which[k]);
    Vec e = (sys.unit_effect + w) / (1.0 + w.dot(w));
    s.items.push_back({probs[static_cast<Eigen::Index>(k)], w, e});
  }
  validate_strategy(s);
  return s;
}

}  // namespace

BankStrategy wiesner_strategy(const TheoryDescriptor& t) {
  const System& sys = t.system;
  if (sys.kind == TheoryKind::Quantum && sys.herm->matrix_dim() == 2) {
    Eigen::VectorXcd zero(2), one(2), plus(2), minus(2);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    plus << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
    minus << std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2;
    BankStrategy s;
    s.system = sys;
    for (const auto& psi : {zero, one, plus, minus}) {
      Vec v = pure_state_coords(*sys.herm, psi);
      s.items.push_back({0.25, v, v});
    }
    validate_strategy(s);
    return s;
  }
  if (sys.kind == TheoryKind::Classical) {
    BankStrategy s;
    s.system = sys;
    const int n = sys.dim;
    for (int i = 0; i < n; ++i) {
      Vec v = Vec::Zero(n);
      v[i] = 1.0;
      s.items.push_back({1.0 / n, v, v});
    }
    validate_strategy(s);
    return s;
  }
  if (sys.kind == TheoryKind::Polyhedral) {
    const int n = static_cast<int>(sys.state_generators.cols());
    require(n % 2 == 0, ErrorCode::Validation,
            "wiesner_strategy: this state space has no exposing effects for "
            "every extremal state (odd polygon)");
    std::vector<int> which(n);
    for (int i = 0; i < n; ++i) which[i] = i;
    return exposing_strategy(sys, which, Vec::Constant(n, 1.0 / n));
  }
  fail(ErrorCode::Unsupported,
       "wiesner_strategy: no canonical ensemble for this theory");
}

BankStrategy random_strategy(const TheoryDescriptor& t, std::mt19937_64& rng,
                             int max_items) {
  const System& sys = t.system;
  std::uniform_real_distribution<double> unif(0.1, 1.0);

  auto probs = [&](int k) {
    Vec p(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      p[i] = unif(rng);
      sum += p[i];
    }
    // exact unit sum: fold rounding into the largest entry
    p /= sum;
    Eigen::Index imax;
    p.maxCoeff(&imax);
    p[imax] += 1.0 - p.sum();
    return p;
  };

  if (sys.kind == TheoryKind::Quantum) {
    const int d = sys.herm->matrix_dim();
    int cap = max_items > 0 ? max_items : sys.dim;
    std::uniform_int_distribution<int> nitems(1, cap);
    int k = nitems(rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    BankStrategy s;
    s.system = sys;
    Vec p = probs(k);
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXcd psi(d);
      for (int j = 0; j < d; ++j)
        psi[j] = std::complex<double>(gauss(rng), gauss(rng));
      psi.normalize();
      Vec v = pure_state_coords(*sys.herm, psi);
      s.items.push_back({p[i], v, v});
    }
    validate_strategy(s);
    return s;
  }

  // classical and polyhedral: a random subset of extremal states with their
  // exposing effects (indicators in the classical case)
  const int n = static_cast<int>(sys.state_generators.cols());
  int cap = max_items > 0 ? std::min(max_items, n) : n;
  std::uniform_int_distribution<int> nitems(1, cap);
  int k = nitems(rng);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<int> which(all.begin(), all.begin() + k);
  std::sort(which.begin(), which.end());
  Vec p = probs(k);
  if (sys.kind == TheoryKind::Classical) {
    BankStrategy s;
    s.system = sys;
    for (int i = 0; i < k; ++i) {
      Vec v = sys.state_generators.col(which[i]);
      s.items.push_back({p[i], v, v});
    }
    validate_strategy(s);
    return s;
  }
  return exposing_strategy(sys, which, p);
}

std::vector<Vec> causal_state_basis(const TheoryDescriptor& t) {
  const System& sys = t.system;
  std::vector<Vec> basis;
  if (sys.kind == TheoryKind::Quantum) {
    for (const auto& v : sys.herm->rank_one_spanning()) basis.push_back(v);
    return basis;
  }
  if (sys.kind == TheoryKind::Classical) {
    for (int i = 0; i < sys.dim; ++i) {
      Vec v = Vec::Zero(sys.dim);
      v[i] = 1.0;
      basis.push_back(v);
    }
    return basis;
  }
  // polyhedral: pick a maximal independent subset of the extremal states
  Mat gens = sys.state_generators;
  Mat chosen(sys.dim, 0);
  for (Eigen::Index i = 0; i < gens.cols(); ++i) {
    Mat trial(sys.dim, chosen.cols() + 1);
    trial.leftCols(chosen.cols()) = chosen;
    trial.col(chosen.cols()) = gens.col(i);
    Eigen::ColPivHouseholderQR<Mat> qr(trial);
    qr.setThreshold(1e-10);
    if (qr.rank() == trial.cols()) chosen = trial;
    if (chosen.cols() == sys.dim) break;
  }
  require(chosen.cols() == sys.dim, ErrorCode::Internal,
          "causal_state_basis: extremal states do not span");
  for (Eigen::Index i = 0; i < chosen.cols(); ++i) basis.push_back(chosen.col(i));
  return basis;
}

}  // namespace gptmint
