// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "optra/error.hpp"
#include "optra/random.hpp"

namespace optra {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Vector difference(std::span<const double> x, std::span<const double> z) {
  Vector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - z[j];
  return out;
}

/// M M^T for a rectangular M (the smaller Gram matrix when rows < cols).
DenseSym outer_gram(const Matrix& m) {
  DenseSym g(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.rows(); ++j) g.set(i, j, dot(m.row(i), m.row(j)));
  }
  return g;
}

double gram_lambda_max(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const DenseSym g = m.rows() <= m.cols() ? outer_gram(m) : DenseSym::gram(m);
  return std::max(0.0, jacobi_eigen(g).values.back());
}

void fnv_mix(std::uint64_t& h, const void* bytes, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
}

void fnv_mix_doubles(std::uint64_t& h, std::span<const double> v) {
  fnv_mix(h, v.data(), v.size() * sizeof(double));
}

}  // namespace

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kLeastSquares: return "least_squares";
    case ObjectiveKind::kLogistic: return "logistic";
    case ObjectiveKind::kHardTwoAgent: return "hard_two_agent";
    case ObjectiveKind::kHardLine: return "hard_line";
    case ObjectiveKind::kZero: return "zero";
  }
  return "unknown";
}

ObjectiveInstance::ObjectiveInstance(ObjectiveKind kind, std::size_t dim,
                                     std::vector<LocalTerm> terms, double lf)
    : kind_(kind), dim_(dim), terms_(std::move(terms)), lf_(lf) {
  if (terms_.empty()) fail(ErrorCode::kInvalidSize, "objective needs at least one agent");
  if (dim_ == 0) fail(ErrorCode::kInvalidSize, "objective dimension must be positive");
  for (const LocalTerm& t : terms_) {
    std::visit(Overloaded{
                   [&](const LeastSquaresTerm& ls) {
                     if (ls.a.cols() != dim_ || ls.b.size() != ls.a.rows()) {
                       fail(ErrorCode::kShapeError, "least-squares block shape mismatch");
                     }
                   },
                   [&](const LogisticTerm& lg) {
                     if (lg.u.cols() != dim_ || lg.labels.size() != lg.u.rows()) {
                       fail(ErrorCode::kShapeError, "logistic block shape mismatch");
                     }
                   },
                   [&](const QuadraticTerm& q) {
                     if (q.h.size() != dim_ || q.c.size() != dim_) {
                       fail(ErrorCode::kShapeError, "quadratic term shape mismatch");
                     }
                   },
                   [](const ZeroTerm&) {},
               },
               t);
  }
}

void ObjectiveInstance::check_agent(std::size_t i) const {
  if (i >= terms_.size()) {
    fail(ErrorCode::kIndexError, "agent index " + std::to_string(i) + " out of range for " +
                                     std::to_string(terms_.size()) + " agents");
  }
}

const LocalTerm& ObjectiveInstance::term(std::size_t i) const {
  check_agent(i);
  return terms_[i];
}

double ObjectiveInstance::local_value(std::size_t i, std::span<const double> x) const {
  check_agent(i);
  if (x.size() != dim_) fail(ErrorCode::kShapeError, "local_value: wrong point dimension");
  return std::visit(Overloaded{
                        [&](const LeastSquaresTerm& ls) {
                          double s = 0.0;
                          for (std::size_t r = 0; r < ls.a.rows(); ++r) {
                            const double res = dot(ls.a.row(r), x) - ls.b[r];
                            s += res * res;
                          }
                          return s;
                        },
                        [&](const LogisticTerm& lg) {
                          double s = 0.0;
                          for (std::size_t r = 0; r < lg.u.rows(); ++r) {
                            s += softplus(-lg.labels[r] * dot(lg.u.row(r), x));
                          }
                          return s;
                        },
                        [&](const QuadraticTerm& q) {
                          const Vector hx = q.h.multiply(x);
                          return 0.5 * dot(hx, x) + dot(q.c, x);
                        },
                        [](const ZeroTerm&) { return 0.0; },
                    },
                    terms_[i]);
}

Vector ObjectiveInstance::local_gradient(std::size_t i, std::span<const double> x) const {
  check_agent(i);
  if (x.size() != dim_) fail(ErrorCode::kShapeError, "local_gradient: wrong point dimension");
  return std::visit(Overloaded{
                        [&](const LeastSquaresTerm& ls) {
                          Vector res = ls.a.multiply(x);
                          for (std::size_t r = 0; r < res.size(); ++r) res[r] = 2.0 * (res[r] - ls.b[r]);
                          return ls.a.multiply_transposed(res);
                        },
                        [&](const LogisticTerm& lg) {
                          Vector w(lg.u.rows());
                          for (std::size_t r = 0; r < lg.u.rows(); ++r) {
                            const double yr = lg.labels[r];
                            w[r] = -yr * sigmoid(-yr * dot(lg.u.row(r), x));
                          }
                          return lg.u.multiply_transposed(w);
                        },
                        [&](const QuadraticTerm& q) {
                          Vector g = q.h.multiply(x);
                          for (std::size_t j = 0; j < g.size(); ++j) g[j] += q.c[j];
                          return g;
                        },
                        [&](const ZeroTerm&) { return Vector(dim_, 0.0); },
                    },
                    terms_[i]);
}

double ObjectiveInstance::local_smoothness(std::size_t i) const {
  check_agent(i);
  return std::visit(Overloaded{
                        [](const LeastSquaresTerm& ls) { return 2.0 * gram_lambda_max(ls.a); },
                        [](const LogisticTerm& lg) { return 0.25 * gram_lambda_max(lg.u); },
                        [](const QuadraticTerm& q) {
                          return std::max(0.0, jacobi_eigen(q.h).values.back());
                        },
                        [](const ZeroTerm&) { return 0.0; },
                    },
                    terms_[i]);
}

double ObjectiveInstance::local_bregman(std::size_t i, std::span<const double> x,
                                        std::span<const double> z,
                                        std::span<const double> grad_z) const {
  check_agent(i);
  const Vector diff = difference(x, z);
  return std::visit(Overloaded{
                        [&](const LeastSquaresTerm& ls) {
                          const Vector ad = ls.a.multiply(diff);
                          return dot(ad, ad);
                        },
                        [&](const LogisticTerm&) {
                          return local_value(i, x) - local_value(i, z) - dot(grad_z, diff);
                        },
                        [&](const QuadraticTerm& q) { return 0.5 * dot(q.h.multiply(diff), diff); },
                        [](const ZeroTerm&) { return 0.0; },
                    },
                    terms_[i]);
}

double ObjectiveInstance::value(const MultiVector& x) const {
  if (x.agents() != agents() || x.dim() != dim_) fail(ErrorCode::kShapeError, "value: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < agents(); ++i) s += local_value(i, x.row(i));
  return s;
}

MultiVector ObjectiveInstance::gradient(const MultiVector& x) const {
  if (x.agents() != agents() || x.dim() != dim_) {
    fail(ErrorCode::kShapeError, "gradient: shape mismatch");
  }
  MultiVector g(agents(), dim_);
  for (std::size_t i = 0; i < agents(); ++i) {
    const Vector gi = local_gradient(i, x.row(i));
    std::copy(gi.begin(), gi.end(), g.row(i).begin());
  }
  return g;
}

double ObjectiveInstance::global_value(std::span<const double> z) const {
  double s = 0.0;
  for (std::size_t i = 0; i < agents(); ++i) s += local_value(i, z);
  return s;
}

Vector ObjectiveInstance::global_gradient(std::span<const double> z) const {
  Vector g(dim_, 0.0);
  for (std::size_t i = 0; i < agents(); ++i) {
    const Vector gi = local_gradient(i, z);
    for (std::size_t j = 0; j < dim_; ++j) g[j] += gi[j];
  }
  return g;
}

std::uint64_t ObjectiveInstance::fingerprint() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const int k = static_cast<int>(kind_);
  fnv_mix(h, &k, sizeof k);
  fnv_mix(h, &dim_, sizeof dim_);
  const std::size_t m = terms_.size();
  fnv_mix(h, &m, sizeof m);
  for (const LocalTerm& t : terms_) {
    const std::size_t idx = t.index();
    fnv_mix(h, &idx, sizeof idx);
    std::visit(Overloaded{
                   [&](const LeastSquaresTerm& ls) {
                     fnv_mix_doubles(h, ls.a.data());
                     fnv_mix_doubles(h, ls.b);
                   },
                   [&](const LogisticTerm& lg) {
                     fnv_mix_doubles(h, lg.u.data());
                     fnv_mix_doubles(h, lg.labels);
                   },
                   [&](const QuadraticTerm& q) {
                     fnv_mix_doubles(h, q.h.data());
                     fnv_mix_doubles(h, q.c);
                   },
                   [](const ZeroTerm&) {},
               },
               t);
  }
  return h;
}

ObjectiveInstance generate_least_squares(std::size_t m, std::size_t r, std::size_t d, double omega,
                                         double noise_sd, std::uint64_t seed) {
  if (m == 0 || r == 0 || d == 0) fail(ErrorCode::kInvalidSize, "least squares needs m, r, d >= 1");
  if (!(omega >= 0.0 && omega < 1.0)) {
    fail(ErrorCode::kInvalidParameter, "omega must lie in [0, 1), got " + std::to_string(omega));
  }
  if (!(noise_sd >= 0.0)) fail(ErrorCode::kInvalidParameter, "noise_sd must be nonnegative");

  const std::size_t n = m * r;
  Rng rng(seed);
  Matrix a(n, d);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < d; ++col) a(row, col) = rng.normal();
  }
  const double first_scale = 1.0 / std::sqrt(1.0 - omega * omega);
  for (std::size_t row = 0; row < n; ++row) {
    a(row, 0) *= first_scale;
    for (std::size_t col = 1; col < d; ++col) a(row, col) += omega * a(row, col - 1);
  }
  Vector x0(d);
  for (double& v : x0) v = rng.normal();
  Vector b = a.multiply(x0);
  for (double& v : b) v += noise_sd * rng.normal();

  std::vector<LocalTerm> terms;
  terms.reserve(m);
  double lf = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    LeastSquaresTerm t{Matrix(r, d), Vector(r)};
    for (std::size_t row = 0; row < r; ++row) {
      const std::size_t src = i * r + row;
      std::copy_n(a.row(src).begin(), d, t.a.row(row).begin());
      t.b[row] = b[src];
    }
    lf = std::max(lf, 2.0 * gram_lambda_max(t.a));
    terms.emplace_back(std::move(t));
  }
  return ObjectiveInstance(ObjectiveKind::kLeastSquares, d, std::move(terms), lf);
}

ObjectiveInstance make_zero_objective(std::size_t m, std::size_t d) {
  return ObjectiveInstance(ObjectiveKind::kZero, d, std::vector<LocalTerm>(m, ZeroTerm{}), 0.0);
}

namespace {

/// Block pattern of the two split matrices truncated to the leading k x k block.
/// first == true couples (1,2), (3,4), ... and sets (0,0) = 1; otherwise (0,1), (2,3), ...
DenseSym hard_split_matrix(int k, std::size_t d, bool first, double scale) {
  DenseSym h(d);
  const auto kk = static_cast<std::size_t>(k);
  std::size_t start = 0;
  if (first) {
    if (kk > 0) h.set(0, 0, scale);
    start = 1;
  }
  for (std::size_t i = start; i + 1 < d; i += 2) {
    if (i < kk) h.set(i, i, scale);
    if (i + 1 < kk) {
      h.set(i + 1, i + 1, scale);
      h.set(i, i + 1, -scale);
    }
  }
  return h;
}

void check_hard_dims(int k, std::size_t d, double lf) {
  if (k < 1) fail(ErrorCode::kInvalidParameter, "hard instance needs k >= 1");
  if (2 * static_cast<std::size_t>(k) + 1 > d) {
    fail(ErrorCode::kDimensionTooSmall, "hard instance needs 2k+1 <= d (k=" + std::to_string(k) +
                                            ", d=" + std::to_string(d) + ")");
  }
  if (!(lf > 0.0)) fail(ErrorCode::kInvalidParameter, "hard instance needs Lf > 0");
}

QuadraticTerm hard_first(int k, std::size_t d, double lf) {
  QuadraticTerm t{hard_split_matrix(k, d, true, lf / 4.0), Vector(d, 0.0)};
  t.c[0] = -lf / 4.0;
  return t;
}

QuadraticTerm hard_second(int k, std::size_t d, double lf) {
  return QuadraticTerm{hard_split_matrix(k, d, false, lf / 4.0), Vector(d, 0.0)};
}

}  // namespace

ObjectiveInstance generate_hard_two_agent(int k, std::size_t d, double lf) {
  check_hard_dims(k, d, lf);
  std::vector<LocalTerm> terms{hard_first(k, d, lf), hard_second(k, d, lf)};
  ObjectiveInstance inst(ObjectiveKind::kHardTwoAgent, d, std::move(terms), lf);
  inst.set_hard_info({k, 0.0, 1});
  return inst;
}

ObjectiveInstance generate_hard_line(std::size_t m, int k, std::size_t d, double lf, double zeta) {
  check_hard_dims(k, d, lf);
  if (m < 3) fail(ErrorCode::kInvalidSize, "hard line instance needs m >= 3");
  if (!(zeta > 0.0 && zeta < 0.5)) fail(ErrorCode::kInvalidParameter, "zeta must lie in (0, 1/2)");
  const auto md = static_cast<double>(m);
  const auto left = static_cast<std::size_t>(std::ceil(zeta * md));
  const auto right_start = static_cast<std::size_t>(std::floor((1.0 - zeta) * md));  // 0-based
  if (right_start + 1 <= left) {
    fail(ErrorCode::kInvalidSize, "hard line instance: agent groups overlap (separator distance < 1)");
  }
  std::vector<LocalTerm> terms(m, ZeroTerm{});
  for (std::size_t i = 0; i < left; ++i) terms[i] = hard_first(k, d, lf);
  for (std::size_t i = right_start; i < m; ++i) terms[i] = hard_second(k, d, lf);
  ObjectiveInstance inst(ObjectiveKind::kHardLine, d, std::move(terms), lf);
  inst.set_hard_info({k, zeta, left});
  return inst;
}

double hard_optimum(int k, double lf) { return lf / 8.0 * (-1.0 + 1.0 / (k + 1.0)); }

double hard_restricted_optimum(int k, int j, double lf) {
  if (j <= 0) return 0.0;
  const double jj = std::clamp(j, 0, k);
  const double k1 = k + 1.0;
  return -lf / 8.0 * (static_cast<double>(k) * k + jj) / (k1 * k1);
}

double hard_gradient_norm(int k, double lf) {
  return std::sqrt(2.0 * k) * lf / (4.0 * (k + 1.0));
}

namespace {

ReferenceSolution finish_reference(const ObjectiveInstance& inst, Vector x_star) {
  ReferenceSolution ref;
  ref.x_star = std::move(x_star);
  const MultiVector stacked = MultiVector::consensus(inst.agents(), ref.x_star);
  ref.grad_at_star = inst.gradient(stacked);
  ref.y_star = -1.0 * ref.grad_at_star;
  ref.f_star = inst.value(stacked);
  return ref;
}

Vector solve_spd_or_pseudo(const DenseSym& h, std::span<const double> rhs) {
  Vector x;
  if (cholesky_solve(h, rhs, x)) return x;
  return pseudo_solve(h, rhs);
}

Vector least_squares_solution(const ObjectiveInstance& inst) {
  const std::size_t d = inst.dim();
  DenseSym h(d);
  Vector rhs(d, 0.0);
  std::size_t rows = 0;
  std::vector<double> acc(d * d, 0.0);
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const auto& ls = std::get<LeastSquaresTerm>(inst.term(i));
    rows += ls.a.rows();
    for (std::size_t r = 0; r < ls.a.rows(); ++r) {
      const auto row = ls.a.row(r);
      for (std::size_t p = 0; p < d; ++p) {
        const double ap = row[p];
        if (ap == 0.0) continue;
        rhs[p] += ap * ls.b[r];
        for (std::size_t q = p; q < d; ++q) acc[p * d + q] += ap * row[q];
      }
    }
  }
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = p; q < d; ++q) h.set(p, q, acc[p * d + q]);
  }
  if (rows >= d) return solve_spd_or_pseudo(h, rhs);
  return pseudo_solve(h, rhs);
}

Vector logistic_solution(const ObjectiveInstance& inst) {
  const std::size_t d = inst.dim();
  Vector x(d, 0.0);
  Vector g = inst.global_gradient(x);
  const double g0 = norm2(g);
  const double target = 1e-10 * std::max(1.0, g0);
  double fx = inst.global_value(x);
  for (int iter = 0; iter < 500; ++iter) {
    if (norm2(g) <= target) return x;
    DenseSym h(d);
    std::vector<double> acc(d * d, 0.0);
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      const auto& lg = std::get<LogisticTerm>(inst.term(i));
      for (std::size_t r = 0; r < lg.u.rows(); ++r) {
        const auto u = lg.u.row(r);
        const double s = sigmoid(lg.labels[r] * dot(u, x));
        const double w = s * (1.0 - s);
        for (std::size_t p = 0; p < d; ++p) {
          for (std::size_t q = p; q < d; ++q) acc[p * d + q] += w * u[p] * u[q];
        }
      }
    }
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p; q < d; ++q) h.set(p, q, acc[p * d + q]);
    }
    Vector dir = solve_spd_or_pseudo(h, g);
    for (double& v : dir) v = -v;
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {
      dir = g;
      for (double& v : dir) v = -v;
      slope = -dot(g, g);
    }
    double step = 1.0;
    Vector trial(d);
    double ft = fx;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = x[j] + step * dir[j];
      ft = inst.global_value(trial);
      if (ft <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    x = trial;
    fx = ft;
    g = inst.global_gradient(x);
  }
  if (norm2(g) <= target) return x;
  fail(ErrorCode::kReferenceSolveFailed,
       "logistic reference solve did not reach gradient norm 1e-10 (relative) in 500 Newton steps");
}

}  // namespace

ReferenceSolution solve_reference(const ObjectiveInstance& inst) {
  switch (inst.kind()) {
    case ObjectiveKind::kLeastSquares:
      return finish_reference(inst, least_squares_solution(inst));
    case ObjectiveKind::kLogistic:
      return finish_reference(inst, logistic_solution(inst));
    case ObjectiveKind::kHardTwoAgent:
    case ObjectiveKind::kHardLine: {
      const int k = inst.hard_info()->k;
      Vector x(inst.dim(), 0.0);
      for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = (k - i) / (k + 1.0);
      ReferenceSolution ref = finish_reference(inst, std::move(x));
      ref.f_star = static_cast<double>(inst.hard_info()->group_size) * hard_optimum(k, inst.lf());
      return ref;
    }
    case ObjectiveKind::kZero:
      return finish_reference(inst, Vector(inst.dim(), 0.0));
  }
  fail(ErrorCode::kInvalidParameter, "unknown objective kind");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

ObjectiveInstance load_csv_dataset(const std::string& path, const std::string& label_column,
                                   std::size_t m, bool rescale) {
  if (m == 0) fail(ErrorCode::kInvalidSize, "dataset split needs m >= 1");
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open dataset '" + path + "'");

  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) fail(ErrorCode::kParseError, "dataset '" + path + "' has no header row");
  const auto it = std::find(header.begin(), header.end(), label_column);
  if (it == header.end()) {
    fail(ErrorCode::kParseError, "label column '" + label_column + "' not found in header");
  }
  const auto label_idx = static_cast<std::size_t>(it - header.begin());
  const std::size_t features = header.size() - 1;
  if (features == 0) fail(ErrorCode::kParseError, "dataset has no feature columns");

  std::vector<Vector> rows;
  Vector labels;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::kParseError, "line " + std::to_string(lineno) + ": expected " +
                                       std::to_string(header.size()) + " fields, got " +
                                       std::to_string(cells.size()));
    }
    Vector feat;
    feat.reserve(features);
    double label = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!parse_real(cells[c], v)) {
        fail(ErrorCode::kParseError, "line " + std::to_string(lineno) + ": field " +
                                         std::to_string(c + 1) + " is not a finite number");
      }
      if (c == label_idx) {
        label = v;
      } else {
        feat.push_back(v);
      }
    }
    rows.push_back(std::move(feat));
    labels.push_back(label);
  }
  if (rows.size() < m) {
    fail(ErrorCode::kInvalidSize, "dataset has " + std::to_string(rows.size()) +
                                      " rows, fewer than the " + std::to_string(m) + " agents");
  }

  const std::set<double> distinct(labels.begin(), labels.end());
  const bool zero_one = std::all_of(distinct.begin(), distinct.end(),
                                    [](double v) { return v == 0.0 || v == 1.0; });
  const bool plus_minus = std::all_of(distinct.begin(), distinct.end(),
                                      [](double v) { return v == -1.0 || v == 1.0; });
  if (!zero_one && !plus_minus) {
    fail(ErrorCode::kLabelError, "labels must be binary {0,1} or {-1,1}");
  }
  for (double& v : labels) v = v == 1.0 ? 1.0 : -1.0;

  if (rescale) {
    for (std::size_t c = 0; c < features; ++c) {
      double lo = rows[0][c];
      double hi = rows[0][c];
      for (const Vector& r : rows) {
        lo = std::min(lo, r[c]);
        hi = std::max(hi, r[c]);
      }
      const double span = hi - lo;
      for (Vector& r : rows) r[c] = span > 0.0 ? (r[c] - lo) / span : 0.0;
    }
  }

  const std::size_t n = rows.size();
  std::vector<LocalTerm> terms;
  double lf = 0.0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t count = n / m + (i < n % m ? 1 : 0);
    LogisticTerm t{Matrix(count, features), Vector(count)};
    for (std::size_t r = 0; r < count; ++r, ++next) {
      std::copy(rows[next].begin(), rows[next].end(), t.u.row(r).begin());
      t.labels[r] = labels[next];
    }
    lf = std::max(lf, 0.25 * gram_lambda_max(t.u));
    terms.emplace_back(std::move(t));
  }
  return ObjectiveInstance(ObjectiveKind::kLogistic, features, std::move(terms), lf);
}

}  // namespace optra
