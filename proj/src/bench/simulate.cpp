#include "ustat/bench/simulate.hpp"

#include <cmath>

namespace ustat::bench {

Dist dist_from_name(const std::string& name) {
  if (name == "normal") return Dist::Normal;
  if (name == "cauchy") return Dist::Cauchy;
  if (name == "laplace") return Dist::Laplace;
  throw ConfigError("unknown distribution '" + name + "' (expected normal, cauchy or laplace)");
}

MarginalFamily marginal_family(Dist dist) {
  switch (dist) {
    case Dist::Normal:
      return MarginalFamily::Normal;
    case Dist::Cauchy:
      return MarginalFamily::Cauchy;
    case Dist::Laplace:
      return MarginalFamily::Laplace;
  }
  throw ConfigError("unknown distribution");
}

namespace {

double draw(const MarginalSim& m, RngStream& rng) {
  if (m.scale == 0.0) return m.mu;
  switch (m.dist) {
    case Dist::Normal:
      return rng.normal(m.mu, m.scale);
    case Dist::Cauchy:
      return rng.cauchy(m.mu, m.scale);
    case Dist::Laplace:
      return rng.laplace(m.mu, m.scale);
  }
  throw ConfigError("unknown distribution");
}

}  // namespace

Sample simulate_dataset(const DatasetDesign& design, RngStream& rng) {
  if (design.n < 2) throw ConfigError("dataset design: n must be >= 2");
  if (design.p < 1) throw ConfigError("dataset design: p must be >= 1");
  if (static_cast<int>(design.pre.size()) != design.p)
    throw ConfigError("dataset design: pre-break marginals must have length p");
  if (design.has_change) {
    if (static_cast<int>(design.post.size()) != design.p)
      throw ConfigError("dataset design: post-break marginals must have length p");
    if (!(design.tau_star > 0.0 && design.tau_star < 1.0))
      throw ConfigError("dataset design: tau_star must lie in (0,1)");
  }
  for (const auto& coords : {design.pre, design.post})
    for (const auto& m : coords)
      if (!(m.scale >= 0.0) || !std::isfinite(m.scale) || !std::isfinite(m.mu))
        throw ConfigError("dataset design: marginal parameters must be finite, scale >= 0");

  const int k_star =
      design.has_change ? static_cast<int>(std::floor(design.n * design.tau_star)) : design.n;
  DataMatrix data(design.n, design.p);
  for (int i = 0; i < design.n; ++i) {
    const auto& coords = i < k_star ? design.pre : design.post;
    for (int l = 0; l < design.p; ++l) data(i, l) = draw(coords[l], rng);
  }
  return Sample(std::move(data));
}

std::vector<Marginal> to_marginals(const std::vector<MarginalSim>& sims) {
  std::vector<Marginal> out;
  out.reserve(sims.size());
  for (const auto& sim : sims) out.push_back(Marginal{marginal_family(sim.dist), sim.scale});
  return out;
}

}  // namespace ustat::bench
