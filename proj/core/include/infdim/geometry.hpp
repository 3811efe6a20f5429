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

#ifndef INFDIM_GEOMETRY_HPP_
#define INFDIM_GEOMETRY_HPP_

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace infdim {

/// Values with |x| below this are reported as Sign::Zero.
inline constexpr double kZeroBand = 1e-12;

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

Sign sign_of(double value);
Sign negate(Sign s);
int to_int(Sign s);
const char* to_string(Sign s);

/// A point of the ambient space R^d.
class Point {
 public:
  Point() = default;
  explicit Point(Eigen::VectorXd coords);
  Point(std::initializer_list<double> coords);

  const Eigen::VectorXd& coords() const { return coords_; }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()); }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

 private:
  Eigen::VectorXd coords_;
};

/// h(x) = <normal, x> + offset, kept with a unit-norm normal so that (v, b)
/// and (lambda v, lambda b) for lambda > 0 compare equal.
class Hyperplane {
 public:
  Hyperplane(Eigen::VectorXd normal, double offset);

  const Eigen::VectorXd& normal() const { return normal_; }
  double offset() const { return offset_; }
  std::size_t dim() const { return static_cast<std::size_t>(normal_.size()); }

  /// The homogenized weight (normal, offset) in R^{d+1}.
  Eigen::VectorXd lifted_weight() const;

  bool operator==(const Hyperplane& other) const;

 private:
  Eigen::VectorXd normal_;
  double offset_ = 0.0;
};

enum class LiftKind { Point, Difference };

/// A vector of R^{d+1}: (x, 1) for a point lift, (x - y, 0) for a
/// difference lift. Label and comparison answers are signs of the hidden
/// lifted weight against one of these.
class LiftedVector {
 public:
  const Eigen::VectorXd& coords() const { return coords_; }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()); }
  /// Dimension of the underlying space, i.e. dim() - 1.
  std::size_t base_dim() const { return dim() - 1; }
  LiftKind kind() const { return coords_[coords_.size() - 1] == 1.0 ? LiftKind::Point : LiftKind::Difference; }

  friend LiftedVector lift_point(const Point& x);
  friend LiftedVector lift_difference(const Point& x, const Point& y);

 private:
  explicit LiftedVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {}
  Eigen::VectorXd coords_;
};

LiftedVector lift_point(const Point& x);
LiftedVector lift_difference(const Point& x, const Point& y);

/// x -> matrix * x + shift, with matrix invertible.
class AffineMap {
 public:
  /// Condition numbers above this are rejected as singular.
  static constexpr double kMaxCondition = 1e12;

  AffineMap(Eigen::MatrixXd matrix, Eigen::VectorXd shift);
  static AffineMap identity(std::size_t d);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& shift() const { return shift_; }
  std::size_t dim() const { return static_cast<std::size_t>(shift_.size()); }

  AffineMap inverse() const;
  /// (this o inner)(x) = this(inner(x)).
  AffineMap compose(const AffineMap& inner) const;

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd shift_;
};

double evaluate(const Hyperplane& h, const Point& x);
Sign label_sign(const Hyperplane& h, const Point& x);

Point apply_affine(const AffineMap& m, const Point& x);
/// The hyperplane h' with sign(h'(m(x))) == sign(h(x)) for every x.
Hyperplane transform_hyperplane(const AffineMap& m, const Hyperplane& h);

Point difference(const Point& x, const Point& y);
std::vector<Point> apply_affine(const AffineMap& m, const std::vector<Point>& xs);

}  // namespace infdim

#endif  // INFDIM_GEOMETRY_HPP_
