#pragma once

#include "ustat/gaussmc.hpp"
#include "ustat/kernels.hpp"
#include "ustat/useq.hpp"

namespace ustat {

// First-versus-last CUSUM process
//   C_n(k) = sqrt(n) (k/n) (1 - k/n) (U_k - U*_k),  k = 2..n-2,
// where U_k averages pairs within observations 1..k and U*_k within k+1..n.
// Prefix and suffix pair sums are built in one pass; every pair's kernel is
// evaluated exactly once (n(n-1)/2 evaluations, recorded on the path).
SeqPath cusum_process(const Sample& sample, const KernelSpec& spec);

struct CusumStatistic {
  double T_n = 0.0;  // max_k |C_n(k)|_2
  int k_hat = 0;     // smallest maximizing k
};

CusumStatistic cusum_statistic(const SeqPath& path);

struct CusumResult {
  SeqPath path;
  double T_n = 0.0;
  int k_hat = 0;
  double tau_hat = 0.0;
  double q = 0.0;
  bool reject = false;
  int bridge_paths_used = 0;
  double sigma_min_eigenvalue = 0.0;  // lambda_min of the jackknife Sigma_hat
  double sigma_clipped_mass = 0.0;
};

// Full feasible procedure: Sigma_hat by jackknife on the whole sample, bridge
// sups with scaling 2 Sigma_hat^{1/2} on a grid of max(n, 512) points, and the
// empirical (1-alpha) critical value.
CusumResult detect_change(const Sample& sample, const KernelSpec& spec, double alpha, int n_paths,
                          const RngSpec& rng, int threads = 1);

// Population drift of the rescaled CUSUM norm under a single break at
// tau_star, with pre/post kernel means mu1, mu2 and cross mean mu12.
struct DriftSpec {
  Vector mu1;
  Vector mu2;
  Vector mu12;
  double tau_star = 0.5;
};

double drift_V(const DriftSpec& spec, double t);

// True iff both strict inequalities hold:
//   2 tau* (mu2-mu1)'(mu1-mu12)   < |mu2-mu1|^2
//   2 (1-tau*) (mu2-mu1)'(mu12-mu2) < |mu2-mu1|^2
// Together they force drift_V to peak uniquely at tau_star.
bool check_geometric_constraints(const DriftSpec& spec);

}  // namespace ustat
