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

#include "infdim/distributions.hpp"

#include <cmath>

#include "infdim/errors.hpp"

namespace infdim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::VectorXd gaussian_vector(std::size_t d, Rng& rng) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

Eigen::VectorXd sample_raw(const DistributionSpec& spec, Rng& rng) {
  const std::size_t d = spec.dimension();
  return std::visit(
      Overloaded{
          [&](const UniformBall&) -> Eigen::VectorXd {
            Eigen::VectorXd u = sample_unit_vector(d, rng);
            const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
            return u * radius;
          },
          [&](const Gaussian&) -> Eigen::VectorXd { return gaussian_vector(d, rng); },
          [&](const UniformConvexPolytope& p) -> Eigen::VectorXd {
            Eigen::VectorXd x(static_cast<Eigen::Index>(d));
            for (std::size_t attempt = 0; attempt < p.max_attempts; ++attempt) {
              for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(p.lower, p.upper);
              bool inside = true;
              for (const auto& facet : p.facets) {
                if (facet.normal().dot(x) + facet.offset() < 0.0) {
                  inside = false;
                  break;
                }
              }
              if (inside) return x;
            }
            throw ContractViolation("UniformConvexPolytope: rejection sampler exhausted its attempt budget");
          },
          [&](const AffineImage& a) -> Eigen::VectorXd {
            Eigen::VectorXd inner = sample_raw(*a.inner, rng);
            return a.map.matrix() * inner + a.map.shift();
          },
      },
      spec.kind());
}

}  // namespace

DistributionSpec::DistributionSpec(Kind kind, std::size_t dimension) : kind_(std::move(kind)), dimension_(dimension) {
  detail::require(dimension_ >= 1, "DistributionSpec: dimension must be >= 1");
  if (const auto* p = std::get_if<UniformConvexPolytope>(&kind_)) {
    detail::require(p->lower < p->upper, "UniformConvexPolytope: empty bounding box");
    for (const auto& f : p->facets) detail::require(f.dim() == dimension_, "UniformConvexPolytope: facet dimension mismatch");
  }
  if (const auto* a = std::get_if<AffineImage>(&kind_)) {
    detail::require(a->inner != nullptr, "AffineImage: missing inner distribution");
    detail::require(a->inner->dimension() == dimension_ && a->map.dim() == dimension_,
                    "AffineImage: dimension mismatch");
  }
}

DistributionSpec DistributionSpec::affine_image(DistributionSpec inner, AffineMap map) {
  const std::size_t d = inner.dimension();
  return {AffineImage{std::make_shared<const DistributionSpec>(std::move(inner)), std::move(map)}, d};
}

std::string DistributionSpec::name() const {
  return std::visit(Overloaded{
                        [](const UniformBall&) -> std::string { return "uniform_ball"; },
                        [](const Gaussian&) -> std::string { return "gaussian"; },
                        [](const UniformConvexPolytope&) -> std::string { return "polytope"; },
                        [](const AffineImage& a) -> std::string { return "affine(" + a.inner->name() + ")"; },
                    },
                    kind_);
}

Point sample(const DistributionSpec& spec, Rng& rng) { return Point(sample_raw(spec, rng)); }

std::vector<Point> sample_n(const DistributionSpec& spec, std::size_t n, Rng& rng) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(spec, rng));
  return out;
}

Point sample_difference(const DistributionSpec& spec, Rng& rng) {
  Eigen::VectorXd x = sample_raw(spec, rng);
  Eigen::VectorXd y = sample_raw(spec, rng);
  return Point(x - y);
}

Eigen::VectorXd sample_unit_vector(std::size_t d, Rng& rng) {
  detail::require(d >= 1, "sample_unit_vector: d must be >= 1");
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(d, rng);
    const double n = v.norm();
    if (n > 1e-300) return v / n;
  }
}

Hyperplane sample_tangent_hyperplane(std::size_t d, Rng& rng) { return Hyperplane(sample_unit_vector(d, rng), 1.0); }

Hyperplane sample_uniform_offset_hyperplane(std::size_t d, double radius, Rng& rng) {
  Eigen::VectorXd u = sample_unit_vector(d, rng);
  return Hyperplane(std::move(u), rng.uniform(-radius, radius));
}

Eigen::VectorXd sample_mean(const std::vector<Point>& points) {
  detail::require(!points.empty(), "sample_mean: empty sample");
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(points.front().coords().size());
  for (const auto& p : points) mean += p.coords();
  return mean / static_cast<double>(points.size());
}

Eigen::MatrixXd sample_covariance(const std::vector<Point>& points) {
  detail::require(points.size() >= 2, "sample_covariance: need at least two points");
  const Eigen::VectorXd mean = sample_mean(points);
  const auto d = mean.size();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& p : points) {
    const Eigen::VectorXd c = p.coords() - mean;
    cov.noalias() += c * c.transpose();
  }
  return cov / static_cast<double>(points.size() - 1);
}

AffineMap isotropize(const std::vector<Point>& points) {
  if (points.empty() || points.size() < points.front().dim() + 1) {
    throw DegenerateSample("isotropize: need at least d+1 points");
  }
  const Eigen::VectorXd mean = sample_mean(points);
  const Eigen::MatrixXd cov = sample_covariance(points);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (!(lambda.minCoeff() > 1e-12 * std::max(1.0, lambda.maxCoeff()))) {
    throw DegenerateSample("isotropize: singular empirical covariance");
  }
  const Eigen::MatrixXd whiten =
      eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  return AffineMap(whiten, -(whiten * mean));
}

std::optional<AffineMap> exact_isotropizer(const DistributionSpec& spec) {
  const std::size_t d = spec.dimension();
  const auto n = static_cast<Eigen::Index>(d);
  return std::visit(
      Overloaded{
          [&](const UniformBall&) -> std::optional<AffineMap> {
            // Cov of the uniform ball is I / (d + 2).
            const double s = std::sqrt(static_cast<double>(d) + 2.0);
            return AffineMap(Eigen::MatrixXd::Identity(n, n) * s, Eigen::VectorXd::Zero(n));
          },
          [&](const Gaussian&) -> std::optional<AffineMap> { return AffineMap::identity(d); },
          [&](const UniformConvexPolytope&) -> std::optional<AffineMap> { return std::nullopt; },
          [&](const AffineImage& a) -> std::optional<AffineMap> {
            auto inner = exact_isotropizer(*a.inner);
            if (!inner) return std::nullopt;
            return inner->compose(a.map.inverse());
          },
      },
      spec.kind());
}

AffineMap difference_isotropizer(const AffineMap& whiten) {
  return AffineMap(whiten.matrix() / std::sqrt(2.0), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(whiten.dim())));
}

}  // namespace infdim
