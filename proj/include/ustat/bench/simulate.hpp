#pragma once

#include <string>
#include <vector>

#include "ustat/kernels.hpp"
#include "ustat/rng.hpp"
#include "ustat/types.hpp"

namespace ustat::bench {

enum class Dist { Normal, Cauchy, Laplace };

Dist dist_from_name(const std::string& name);
MarginalFamily marginal_family(Dist dist);

struct MarginalSim {
  Dist dist = Dist::Normal;
  double mu = 0.0;
  double scale = 1.0;  // sigma / gamma / b; zero means a constant coordinate
};

struct DatasetDesign {
  int n = 0;
  int p = 0;
  std::vector<MarginalSim> pre;   // size p
  std::vector<MarginalSim> post;  // size p when has_change
  bool has_change = false;
  double tau_star = 0.0;  // rows 1..floor(n tau*) draw from pre, the rest from post
};

// Rows are drawn in order, coordinates left to right, all from one stream.
Sample simulate_dataset(const DatasetDesign& design, RngStream& rng);

// Closed-form kernel means of a marginal vector (locations drop out).
std::vector<Marginal> to_marginals(const std::vector<MarginalSim>& sims);

}  // namespace ustat::bench
