#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace voi::testing {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

DenseEigen dense_principal_eigen(const ahp::ComparisonMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  const auto& values = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < n; ++k)
    if (std::abs(values[k]) > std::abs(values[best])) best = k;
  Eigen::VectorXd v = solver.eigenvectors().col(best).real().cwiseAbs();
  v /= v.sum();
  return {values[best].real(), std::vector<double>(v.data(), v.data() + n)};
}

double dense_consistency_ratio(const ahp::ComparisonMatrix& m) {
  static constexpr std::array<double, 11> ri = {0, 0, 0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  const double n = static_cast<double>(m.size());
  if (m.size() == 2) return 0.0;
  return (dense_principal_eigen(m).lambda_max - n) / (n - 1) / ri[m.size()];
}

ahp::ComparisonMatrix random_reciprocal(std::mt19937_64& rng, std::size_t n) {
  static constexpr std::array<double, 9> scale = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  const bool discrete = uniform_int(rng, 0, 1) == 0;
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v;
      if (discrete) {
        v = scale[static_cast<std::size_t>(uniform_int(rng, 0, 8))];
        if (uniform_int(rng, 0, 1)) v = 1.0 / v;
      } else {
        v = std::exp(uniform(rng, -std::log(9.0), std::log(9.0)));
      }
      rows[i][j] = v;
      rows[j][i] = 1.0 / v;
    }
  }
  return ahp::ComparisonMatrix(std::move(rows));
}

ahp::ComparisonMatrix random_consistent(std::mt19937_64& rng, std::size_t n,
                                        std::vector<double>* generating) {
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(uniform(rng, -std::log(3.0), std::log(3.0)));
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) rows[i][j] = v[i] / v[j];
  // Make the lower triangle exact reciprocals of the upper one.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) rows[i][j] = 1.0 / rows[j][i];
  if (generating) *generating = v;
  return ahp::ComparisonMatrix(std::move(rows));
}

std::vector<sim::ScoredMessage> exhaustive_value_order(std::vector<sim::ScoredMessage> items) {
  const auto key = [](const sim::ScoredMessage& s) {
    return std::make_tuple(-s.value, s.message.meta.generated_at, s.message.id);
  };
  std::vector<std::size_t> perm(items.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool sorted = true;
    for (std::size_t k = 0; k + 1 < perm.size() && sorted; ++k)
      sorted = !(key(items[perm[k + 1]]) < key(items[perm[k]]));
    if (sorted) {
      std::vector<sim::ScoredMessage> out;
      for (std::size_t p : perm) out.push_back(items[p]);
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {};
}

double fifo_slot_value(std::vector<sim::ScoredMessage> items, std::int64_t budget_bits) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.message.meta.generated_at, a.message.id) <
           std::make_tuple(b.message.meta.generated_at, b.message.id);
  });
  double value = 0.0;
  for (const auto& s : items) {
    if (s.message.meta.size_bits <= budget_bits) {
      budget_bits -= s.message.meta.size_bits;
      value += s.value;
    }
  }
  return value;
}

sim::ScenarioConfig random_scenario(std::mt19937_64& rng, bool equal_sizes) {
  sim::ScenarioConfig c;
  c.voi_config = default_safety_config();
  c.voi_config.decay.time_half_life_ms = uniform(rng, 5.0, 500.0);
  c.voi_config.decay.space_radius_m = uniform(rng, 50.0, 500.0);
  c.voi_config.decay.space_shape =
      uniform_int(rng, 0, 3) == 0 ? SpaceShape::FarPreferred : SpaceShape::NearPreferred;
  c.gamma = uniform(rng, 1.0 / 9.0, 9.0);
  c.duration_slots = uniform_int(rng, 1, 80);
  c.slot_ms = uniform(rng, 1.0, 20.0);
  c.rng_seed = rng();
  c.receiver_position = {uniform(rng, -100, 100), uniform(rng, -100, 100)};

  const int size = uniform_int(rng, 100, 2000);
  const int gens = uniform_int(rng, 1, 5);
  std::int64_t max_size = 0;
  for (int g = 0; g < gens; ++g) {
    sim::GeneratorSpec spec;
    spec.source = uniform_int(rng, 0, 1) ? SourceKind::Surrounding : SourceKind::Position;
    spec.period_slots = uniform_int(rng, 1, 6);
    spec.size_bits = equal_sizes ? size : uniform_int(rng, 100, 3000);
    spec.quality = uniform(rng, 0.05, 1.0);
    spec.position = {uniform(rng, -400, 400), uniform(rng, -400, 400)};
    spec.position_jitter_m = uniform(rng, 0.0, 50.0);
    max_size = std::max(max_size, spec.size_bits);
    c.generators.push_back(spec);
  }
  // Between half a message and a few messages per slot.
  c.channel_bits_per_slot =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(uniform(rng, 0.5, 4.0) * max_size));
  return c;
}

}  // namespace voi::testing
