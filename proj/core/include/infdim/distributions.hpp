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

#ifndef INFDIM_DISTRIBUTIONS_HPP_
#define INFDIM_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "infdim/geometry.hpp"
#include "infdim/rng.hpp"

namespace infdim {

struct UniformBall {};
struct Gaussian {};

/// Uniform over {x : h(x) >= 0 for every facet h} intersected with the box
/// [lower, upper]^d; sampled by rejection from the box.
struct UniformConvexPolytope {
  std::vector<Hyperplane> facets;
  double lower = -1.0;
  double upper = 1.0;
  std::size_t max_attempts = 1'000'000;
};

class DistributionSpec;

struct AffineImage {
  std::shared_ptr<const DistributionSpec> inner;
  AffineMap map;
};

class DistributionSpec {
 public:
  using Kind = std::variant<UniformBall, Gaussian, UniformConvexPolytope, AffineImage>;

  DistributionSpec(Kind kind, std::size_t dimension);

  static DistributionSpec uniform_ball(std::size_t d) { return {UniformBall{}, d}; }
  static DistributionSpec gaussian(std::size_t d) { return {Gaussian{}, d}; }
  static DistributionSpec affine_image(DistributionSpec inner, AffineMap map);

  const Kind& kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  std::string name() const;

 private:
  Kind kind_;
  std::size_t dimension_;
};

Point sample(const DistributionSpec& spec, Rng& rng);
std::vector<Point> sample_n(const DistributionSpec& spec, std::size_t n, Rng& rng);

/// x - y for independent x, y ~ spec.
Point sample_difference(const DistributionSpec& spec, Rng& rng);

Eigen::VectorXd sample_unit_vector(std::size_t d, Rng& rng);

/// Hyperplane tangent to the unit ball with the interior on the positive
/// side: h(x) = <u, x> + 1 with u uniform on the sphere.
Hyperplane sample_tangent_hyperplane(std::size_t d, Rng& rng);

/// Uniform normal, offset uniform in [-radius, radius].
Hyperplane sample_uniform_offset_hyperplane(std::size_t d, double radius, Rng& rng);

/// Empirical whitening: the returned map sends the sample mean to 0 and the
/// sample covariance to the identity (symmetric inverse square root).
/// Throws DegenerateSample on fewer than d+1 points or singular covariance.
AffineMap isotropize(const std::vector<Point>& points);

/// The exact whitening map of spec when it is known in closed form
/// (ball, Gaussian, and affine images of those); nullopt otherwise.
std::optional<AffineMap> exact_isotropizer(const DistributionSpec& spec);

/// Linear whitening map for the difference distribution D - D, derived from
/// a whitening map of D (same matrix scaled by 1/sqrt 2, zero shift).
AffineMap difference_isotropizer(const AffineMap& whiten);

Eigen::VectorXd sample_mean(const std::vector<Point>& points);
Eigen::MatrixXd sample_covariance(const std::vector<Point>& points);

}  // namespace infdim

#endif  // INFDIM_DISTRIBUTIONS_HPP_
