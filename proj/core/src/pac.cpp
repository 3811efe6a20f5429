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

#include "infdim/pac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "infdim/errors.hpp"
#include "infdim/lp.hpp"

namespace infdim {
namespace {

std::size_t default_count(std::size_t configured, double factor, std::size_t d, double delta) {
  if (configured > 0) return configured;
  return static_cast<std::size_t>(std::ceil(factor * (static_cast<double>(d) + std::log(1.0 / delta))));
}

// Max-margin homogeneous separator for the labeled rows (columns already
// multiplied by their labels and normalized). Returns the zero vector when
// the program has no positive margin.
Eigen::VectorXd fit_consistent(const std::vector<Eigen::VectorXd>& rows) {
  const auto d = rows.front().size();
  Eigen::MatrixXd strict(d, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) strict.col(static_cast<Eigen::Index>(j)) = rows[j];
  const Eigen::MatrixXd empty(d, 0);
  const auto sol = lp::solve_margin_program(empty, strict);
  if (!(sol.lower_bound > 0.0)) return Eigen::VectorXd::Zero(d);
  return sol.witness;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Hyperplane constant_hyperplane(std::size_t d, Sign s) {
  Eigen::VectorXd n = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  n[0] = 1.0;
  // |x_0| <= 1 on the unit disk, so offset 2 fixes the sign everywhere.
  return Hyperplane(std::move(n), s == Sign::Negative ? -2.0 : 2.0);
}

}  // namespace

void PacParams::validate() const {
  detail::require(epsilon > 0.0 && epsilon < 1.0, "PacParams: epsilon must lie in (0, 1)");
  detail::require(delta > 0.0 && delta < 1.0, "PacParams: delta must lie in (0, 1)");
  detail::require(pool_constant > 0.0 && median_constant > 0.0 && bl_error_scale > 0.0,
                  "PacParams: constants must be positive");
  detail::require(bl.band_constant > 0.0, "PacParams: band constant must be positive");
}

std::size_t PacParams::pool_size() const {
  if (pool_budget > 0) return pool_budget;
  return static_cast<std::size_t>(std::ceil(pool_constant / epsilon));
}

std::size_t PacParams::repeats() const {
  if (median_repeats > 0) return median_repeats;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(median_constant * std::log(1.0 / delta))));
}

double PacParams::direction_target() const {
  return bl_error_scale * epsilon / std::max(1.0, std::log2(1.0 / epsilon));
}

BalcanLongResult balcan_long(const DifferenceSampler& sampler, const DifferenceLabeler& labeler, double eps_prime,
                             double delta, const BalcanLongParams& params, Rng& rng) {
  detail::require(eps_prime > 0.0 && eps_prime < 1.0, "balcan_long: eps' must lie in (0, 1)");
  detail::require(delta > 0.0 && delta < 1.0, "balcan_long: delta must lie in (0, 1)");

  BalcanLongResult result;
  std::vector<Eigen::VectorXd> rows;
  auto take = [&](const DifferenceDraw& draw) {
    const Sign s = labeler(draw);
    ++result.labels_used;
    const double norm = draw.z.coords().norm();
    if (norm == 0.0) return;
    rows.push_back(draw.z.coords() * (static_cast<double>(to_int(s)) / norm));
  };

  DifferenceDraw first = sampler(rng);
  const std::size_t d = first.z.dim();
  const std::size_t m1 = default_count(params.initial_samples, 4.0, d, delta);
  const std::size_t m = default_count(params.samples_per_round, 2.0, d, delta);
  const std::size_t rounds =
      params.rounds > 0
          ? params.rounds
          : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(params.band_constant / eps_prime))));

  take(first);
  for (std::size_t i = 1; i < m1; ++i) take(sampler(rng));
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  u[0] = 1.0;
  auto refit = [&] {
    if (rows.empty()) return;
    Eigen::VectorXd w = fit_consistent(rows);
    const double n = w.norm();
    if (n > 0.0) u = w / n;
  };
  refit();
  result.rounds_run = 1;

  for (std::size_t k = 1; k < rounds; ++k) {
    const double band = params.band_constant * std::ldexp(1.0, -static_cast<int>(k));
    std::size_t got = 0;
    std::size_t draws = 0;
    while (got < m && draws < params.max_draws_per_round) {
      DifferenceDraw draw = sampler(rng);
      ++draws;
      if (std::abs(u.dot(draw.z.coords())) > band) continue;
      take(draw);
      ++got;
    }
    if (got < m) {
      result.starved = true;
      refit();
      break;
    }
    refit();
    ++result.rounds_run;
  }
  result.normal = u;
  return result;
}

std::vector<double> project(std::span<const Point> points, const Eigen::VectorXd& u) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (static_cast<Eigen::Index>(p.dim()) != u.size()) throw ContractViolation("project: dimension mismatch");
    out.push_back(u.dot(p.coords()));
  }
  return out;
}

ThresholdResult threshold(std::span<const Point> projected_points, std::span<const Point> queried_points,
                          const Eigen::VectorXd& u, Oracle& oracle, double pad, std::size_t verify_window) {
  detail::require(!projected_points.empty(), "threshold: empty sample");
  detail::require(projected_points.size() == queried_points.size(), "threshold: point lists differ in length");
  const auto proj = project(projected_points, u);
  std::vector<std::size_t> order(proj.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });

  ThresholdResult result;
  const auto n = static_cast<std::ptrdiff_t>(order.size());
  std::vector<Sign> known(order.size(), Sign::Zero);  // by sorted position
  auto label_at = [&](std::ptrdiff_t pos) {
    auto& slot = known[static_cast<std::size_t>(pos)];
    if (slot == Sign::Zero) {
      slot = oracle.label_query(queried_points[order[static_cast<std::size_t>(pos)]]).answer;
      ++result.labels_used;
    }
    return slot;
  };

  // Invariant: position lo is Negative (or -1), hi is Positive (or n).
  std::ptrdiff_t lo = -1;
  std::ptrdiff_t hi = n;
  while (hi - lo > 1) {
    const std::ptrdiff_t mid = lo + (hi - lo) / 2;
    if (label_at(mid) == Sign::Negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  if (verify_window > 0) {
    const auto w = static_cast<std::ptrdiff_t>(verify_window);
    const std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, lo - w + 1);
    const std::ptrdiff_t last = std::min<std::ptrdiff_t>(n - 1, hi + w - 1);
    for (std::ptrdiff_t p = first; p <= last; ++p) label_at(p);
    // Cut before position c; count labels inside the window on the wrong side.
    std::ptrdiff_t best_cut = hi;
    std::size_t best_bad = static_cast<std::size_t>(-1);
    for (std::ptrdiff_t c = first; c <= last + 1; ++c) {
      std::size_t bad = 0;
      for (std::ptrdiff_t p = first; p <= last; ++p) {
        const Sign s = known[static_cast<std::size_t>(p)];
        if ((p < c && s == Sign::Positive) || (p >= c && s == Sign::Negative)) ++bad;
      }
      if (bad < best_bad) {
        best_bad = bad;
        best_cut = c;
      }
    }
    hi = best_cut;
    lo = best_cut - 1;
  }

  auto proj_at = [&](std::ptrdiff_t pos) { return proj[order[static_cast<std::size_t>(pos)]]; };
  if (lo < 0) {
    result.threshold = proj_at(0) - pad;
    result.one_sided = true;
  } else if (hi >= n) {
    result.threshold = proj_at(n - 1) + pad;
    result.one_sided = true;
  } else {
    result.threshold = 0.5 * (proj_at(lo) + proj_at(hi));
  }
  result.shift = -result.threshold;
  return result;
}

ThresholdResult threshold(std::span<const Point> points, const Eigen::VectorXd& u, Oracle& oracle, double pad,
                          std::size_t verify_window) {
  return threshold(points, points, u, oracle, pad, verify_window);
}

PacOutcome comparison_pool_pac(const DistributionSpec& spec, const PacParams& params, Oracle& oracle, Rng& rng) {
  params.validate();
  const std::size_t d = spec.dimension();
  if (oracle.dim() != d) throw ContractViolation("comparison_pool_pac: oracle dimension mismatch");
  const QueryLedger before = oracle.ledger();

  std::optional<AffineMap> whiten;
  if (params.use_exact_isotropizer) whiten = exact_isotropizer(spec);
  if (!whiten) {
    const std::size_t budget = params.whitening_budget > 0 ? params.whitening_budget : 200 * d;
    whiten = isotropize(sample_n(spec, budget, rng));
  }
  const AffineMap diff_whiten = difference_isotropizer(*whiten);

  DifferenceSampler sampler = [&](Rng& r) {
    Point x = sample(spec, r);
    Point y = sample(spec, r);
    Point z(diff_whiten.matrix() * (x.coords() - y.coords()));
    return DifferenceDraw{std::move(z), std::move(x), std::move(y)};
  };
  DifferenceLabeler labeler = [&](const DifferenceDraw& draw) { return oracle.comparison_query(draw.x, draw.y).answer; };
  const BalcanLongResult bl = balcan_long(sampler, labeler, params.direction_target(), params.delta, params.bl, rng);

  std::vector<double> shifts;
  const std::size_t pool = params.pool_size();
  for (std::size_t i = 0; i < params.repeats(); ++i) {
    const auto original = sample_n(spec, pool, rng);
    const auto whitened = apply_affine(*whiten, original);
    shifts.push_back(threshold(whitened, original, bl.normal, oracle, params.threshold_pad,
                               params.threshold_verify_window)
                         .shift);
  }
  const Hyperplane whitened_hypothesis(bl.normal, median(shifts));

  PacOutcome out{transform_hyperplane(whiten->inverse(), whitened_hypothesis), {}, -1.0, bl.rounds_run, bl.starved,
                 std::move(shifts)};
  out.ledger.label_count = oracle.ledger().label_count - before.label_count;
  out.ledger.comparison_count = oracle.ledger().comparison_count - before.comparison_count;
  return out;
}

std::size_t mqs2d_vertex_count(double epsilon, const Mqs2dParams& params) {
  detail::require(epsilon > 0.0 && epsilon < 1.0, "label_mqs_pac_2d: epsilon must lie in (0, 1)");
  const double k = std::ceil(params.vertex_constant * std::cbrt(1.0 / epsilon));
  return std::max<std::size_t>(3, static_cast<std::size_t>(k));
}

PacOutcome label_mqs_pac_2d(double epsilon, Oracle& oracle, const Mqs2dParams& params) {
  if (oracle.dim() != 2) throw ContractViolation("label_mqs_pac_2d: oracle must be two-dimensional");
  const std::size_t k = mqs2d_vertex_count(epsilon, params);
  const QueryLedger before = oracle.ledger();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(k);
  auto on_circle = [](double angle) { return Point{std::cos(angle), std::sin(angle)}; };

  std::vector<Sign> labels(k);
  for (std::size_t j = 0; j < k; ++j) labels[j] = oracle.label_query(on_circle(step * static_cast<double>(j))).answer;

  std::vector<std::size_t> edges;
  for (std::size_t j = 0; j < k; ++j) {
    if (labels[j] != labels[(j + 1) % k]) edges.push_back(j);
  }

  auto finish = [&](Hyperplane h) {
    PacOutcome out{std::move(h), {}, -1.0, 0, false, {}};
    out.ledger.label_count = oracle.ledger().label_count - before.label_count;
    out.ledger.comparison_count = oracle.ledger().comparison_count - before.comparison_count;
    return out;
  };
  if (edges.empty()) return finish(constant_hyperplane(2, labels[0]));

  // Binary search each sign-changing arc down to length eps / 2.
  std::vector<Eigen::Vector2d> crossings;
  for (std::size_t e = 0; e < std::min<std::size_t>(edges.size(), 2); ++e) {
    const std::size_t j = edges[e];
    double a = step * static_cast<double>(j);
    double b = a + step;
    const Sign sa = labels[j];
    while (b - a > epsilon / 2.0) {
      const double mid = 0.5 * (a + b);
      if (oracle.label_query(on_circle(mid)).answer == sa) {
        a = mid;
      } else {
        b = mid;
      }
    }
    const double c = 0.5 * (a + b);
    crossings.emplace_back(std::cos(c), std::sin(c));
  }
  const Eigen::Vector2d t = crossings[1] - crossings[0];
  Eigen::VectorXd normal(2);
  normal << -t.y(), t.x();
  if (normal.norm() == 0.0) return finish(constant_hyperplane(2, labels[0]));
  double offset = -normal.dot(crossings[0]);

  // Orient with the vertex farthest from the line.
  std::size_t far = 0;
  double far_value = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const Eigen::Vector2d v = on_circle(step * static_cast<double>(j)).coords();
    const double value = normal.dot(v) + offset;
    if (std::abs(value) > std::abs(far_value)) {
      far_value = value;
      far = j;
    }
  }
  if ((far_value > 0.0) != (labels[far] == Sign::Positive)) {
    normal = -normal;
    offset = -offset;
  }
  return finish(Hyperplane(std::move(normal), offset));
}

double estimate_disagreement(const Hyperplane& a, const Hyperplane& b, const DistributionSpec& spec,
                             std::size_t samples, Rng& rng) {
  detail::require(samples > 0, "estimate_disagreement: need at least one sample");
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = sample(spec, rng);
    if (oracle_sign(evaluate(a, x)) != oracle_sign(evaluate(b, x))) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(samples);
}

}  // namespace infdim
