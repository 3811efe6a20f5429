// Copyright 2026 The infdim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "infdim/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "infdim/errors.hpp"

namespace infdim {
namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ContractViolation(what);
}

}  // namespace

Sign sign_of(double value) {
  if (std::abs(value) < kZeroBand) return Sign::Zero;
  return value > 0.0 ? Sign::Positive : Sign::Negative;
}

Sign negate(Sign s) {
  switch (s) {
    case Sign::Positive:
      return Sign::Negative;
    case Sign::Negative:
      return Sign::Positive;
    case Sign::Zero:
      break;
  }
  return Sign::Zero;
}

int to_int(Sign s) { return static_cast<int>(s); }

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive:
      return "+";
    case Sign::Negative:
      return "-";
    case Sign::Zero:
      break;
  }
  return "0";
}

Point::Point(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  detail::require(coords_.size() > 0, "Point: empty coordinate vector");
  detail::require(all_finite(coords_), "Point: non-finite coordinate");
}

Point::Point(std::initializer_list<double> coords)
    : Point(Eigen::Map<const Eigen::VectorXd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

Hyperplane::Hyperplane(Eigen::VectorXd normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  detail::require(normal_.size() > 0, "Hyperplane: empty normal");
  detail::require(all_finite(normal_) && std::isfinite(offset_), "Hyperplane: non-finite entry");
  const double norm = normal_.norm();
  detail::require(norm > 0.0, "Hyperplane: zero normal");
  normal_ /= norm;
  offset_ /= norm;
}

Eigen::VectorXd Hyperplane::lifted_weight() const {
  Eigen::VectorXd w(normal_.size() + 1);
  w.head(normal_.size()) = normal_;
  w[normal_.size()] = offset_;
  return w;
}

bool Hyperplane::operator==(const Hyperplane& other) const {
  constexpr double kTol = 1e-12;
  return normal_.size() == other.normal_.size() && (normal_ - other.normal_).cwiseAbs().maxCoeff() <= kTol &&
         std::abs(offset_ - other.offset_) <= kTol * std::max(1.0, std::abs(offset_));
}

LiftedVector lift_point(const Point& x) {
  Eigen::VectorXd v(x.coords().size() + 1);
  v.head(x.coords().size()) = x.coords();
  v[x.coords().size()] = 1.0;
  return LiftedVector(std::move(v));
}

LiftedVector lift_difference(const Point& x, const Point& y) {
  require_same_dim(x.dim(), y.dim(), "lift_difference: dimension mismatch");
  Eigen::VectorXd v(x.coords().size() + 1);
  v.head(x.coords().size()) = x.coords() - y.coords();
  v[x.coords().size()] = 0.0;
  return LiftedVector(std::move(v));
}

AffineMap::AffineMap(Eigen::MatrixXd matrix, Eigen::VectorXd shift)
    : matrix_(std::move(matrix)), shift_(std::move(shift)) {
  detail::require(matrix_.rows() == matrix_.cols(), "AffineMap: matrix must be square");
  detail::require(matrix_.rows() == shift_.size(), "AffineMap: shift dimension mismatch");
  detail::require(matrix_.allFinite() && shift_.allFinite(), "AffineMap: non-finite entry");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix_);
  const auto& s = svd.singularValues();
  const double smin = s[s.size() - 1];
  if (!(smin > 0.0) || s[0] / smin > kMaxCondition) throw InvalidMap("AffineMap: singular or ill-conditioned matrix");
}

AffineMap AffineMap::identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return AffineMap(Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n));
}

AffineMap AffineMap::inverse() const {
  Eigen::MatrixXd inv = matrix_.inverse();
  Eigen::VectorXd s = -(inv * shift_);
  return AffineMap(std::move(inv), std::move(s));
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  require_same_dim(dim(), inner.dim(), "AffineMap::compose: dimension mismatch");
  return AffineMap(matrix_ * inner.matrix_, matrix_ * inner.shift_ + shift_);
}

double evaluate(const Hyperplane& h, const Point& x) {
  require_same_dim(h.dim(), x.dim(), "evaluate: dimension mismatch");
  return h.normal().dot(x.coords()) + h.offset();
}

Sign label_sign(const Hyperplane& h, const Point& x) { return sign_of(evaluate(h, x)); }

Point apply_affine(const AffineMap& m, const Point& x) {
  require_same_dim(m.dim(), x.dim(), "apply_affine: dimension mismatch");
  return Point(m.matrix() * x.coords() + m.shift());
}

std::vector<Point> apply_affine(const AffineMap& m, const std::vector<Point>& xs) {
  std::vector<Point> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(apply_affine(m, x));
  return out;
}

Hyperplane transform_hyperplane(const AffineMap& m, const Hyperplane& h) {
  require_same_dim(m.dim(), h.dim(), "transform_hyperplane: dimension mismatch");
  // h(x) = <v, M^-1 (y - s)> + b for y = M x + s.
  Eigen::VectorXd normal = m.matrix().transpose().partialPivLu().solve(h.normal());
  const double offset = h.offset() - normal.dot(m.shift());
  return Hyperplane(std::move(normal), offset);
}

Point difference(const Point& x, const Point& y) {
  require_same_dim(x.dim(), y.dim(), "difference: dimension mismatch");
  return Point(x.coords() - y.coords());
}

}  // namespace infdim
