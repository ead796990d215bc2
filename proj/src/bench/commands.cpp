#include "ustat/bench/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ustat/bench/csv.hpp"
#include "ustat/bench/simulate.hpp"
#include "ustat/bench/stats.hpp"
#include "ustat/bench/streams.hpp"
#include "ustat/cpdetect.hpp"
#include "ustat/parallel.hpp"
#include "ustat/sntest.hpp"

namespace ustat::bench {

namespace {

struct Common {
  KernelSpec spec;
  std::string kernel_name;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 1;
};

Common parse_common(const KVConfig& cfg) {
  Common c;
  c.kernel_name = cfg.get_string("kernel", "gmd");
  if (c.kernel_name == "gmd") {
    c.spec.family = KernelFamily::GiniMeanDifference;
  } else if (c.kernel_name == "cdp") {
    c.spec.family = KernelFamily::CharacteristicDispersion;
  } else if (c.kernel_name == "skt") {
    c.spec.family = KernelFamily::SpatialKendallTau;
  } else if (c.kernel_name == "huber") {
    c.spec.family = KernelFamily::HuberScoredCovariance;
    c.spec.huber_xi = cfg.require_double("huber_xi");
    if (!(c.spec.huber_xi > 0.0)) throw ConfigError("huber_xi must be > 0");
  } else if (c.kernel_name == "coordprod") {
    c.spec.family = KernelFamily::CoordinateProduct;
  } else {
    throw ConfigError("unknown kernel '" + c.kernel_name +
                      "' (expected gmd, cdp, skt, huber or coordprod)");
  }
  c.seed = cfg.get_u64("seed", 0);
  c.out = cfg.get_string("out", "report.json");
  c.threads = resolve_threads(cfg.get_int_silent("threads", 0));
  return c;
}

double require_alpha(const KVConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 0.05);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  return alpha;
}

int require_replications(const KVConfig& cfg) {
  const int r = cfg.require_int("replications");
  if (r < 1) throw ConfigError("replications must be >= 1");
  return r;
}

std::vector<double> broadcast_list(const KVConfig& cfg, const std::string& key,
                                   const std::vector<double>& fallback, int p) {
  std::vector<double> values = cfg.get_double_list(key, fallback);
  if (values.size() == 1) values.assign(p, values[0]);
  if (static_cast<int>(values.size()) != p)
    throw ConfigError("config key '" + key + "' needs 1 or p values");
  return values;
}

struct DesignKeys {
  std::string dist = "normal";
  std::vector<double> mu;
  std::vector<double> scale;
};

DesignKeys read_design_keys(const KVConfig& cfg, const std::string& suffix, int p,
                            const DesignKeys* fallback) {
  DesignKeys keys;
  keys.dist = cfg.get_string("dist" + suffix, fallback ? fallback->dist : "normal");
  keys.mu = broadcast_list(cfg, "mu" + suffix,
                           fallback ? fallback->mu : std::vector<double>{0.0}, p);
  keys.scale = broadcast_list(cfg, "scale" + suffix,
                              fallback ? fallback->scale : std::vector<double>{1.0}, p);
  return keys;
}

std::vector<MarginalSim> to_sims(const DesignKeys& keys) {
  const Dist dist = dist_from_name(keys.dist);
  std::vector<MarginalSim> sims(keys.mu.size());
  for (std::size_t l = 0; l < sims.size(); ++l)
    sims[l] = MarginalSim{dist, keys.mu[l], keys.scale[l]};
  return sims;
}

// Heuristic guard for the polynomial dimension-growth condition; the exact
// exponent involves an unknown moment order, so this only warns.
void maybe_dimension_warning(Json& warnings, int n, int d) {
  const double limit = std::cbrt(static_cast<double>(n));
  if (static_cast<double>(d) > limit) {
    std::ostringstream os;
    os << "kernel dimension d = " << d << " exceeds n^(1/3) = " << limit
       << "; asymptotic approximations may be strained";
    warnings.push_back(os.str());
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Built {
  Json results = Json::object();
  Json diagnostics = Json::object();
  std::string summary;
  std::string out;
};

// ---------------------------------------------------------------------------
// relevant-test

Built cmd_relevant_test(const KVConfig& cfg) {
  const Common common = parse_common(cfg);
  const std::string x_path = cfg.require_string("x_csv");
  const std::string y_path = cfg.require_string("y_csv");
  RelevantTestConfig rtc;
  rtc.delta = cfg.require_double("delta");
  if (!(rtc.delta >= 0.0)) throw ConfigError("delta must be >= 0");
  rtc.alpha = require_alpha(cfg);
  rtc.w_paths = cfg.get_int("w_paths", 100000);
  rtc.w_grid = cfg.get_int("w_grid", 2048);
  rtc.lambda_grid_size = cfg.get_int("lambda_grid", 0);
  rtc.rng = RngSpec{common.seed, kWStream};
  rtc.threads = common.threads;
  cfg.reject_unknown_keys();

  const Sample x = ingest_csv(x_path);
  const Sample y = ingest_csv(y_path);
  if (x.p() != y.p()) throw DataError("x_csv and y_csv disagree on the number of columns");

  Json warnings = Json::array();
  maybe_dimension_warning(warnings, std::min(x.n(), y.n()),
                          kernel_dimension(common.spec, x.p()));

  const SNReport rep = run_relevant_test(x, y, common.spec, rtc);

  Built built;
  built.out = common.out;
  built.results = {{"S", json_number(rep.S)},     {"D1", rep.D1},
                   {"V", rep.V},                  {"q", rep.q},
                   {"reject", rep.reject},        {"N", rep.N},
                   {"n1", x.n()},                 {"n2", y.n()},
                   {"lambda_grid_size", rep.lambda_grid_size}};
  built.diagnostics = {{"degenerate_v", rep.degenerate_v}, {"warnings", warnings}};
  std::ostringstream os;
  os << "relevant-test: S = " << json_number(rep.S).dump() << ", q = " << rep.q
     << ", reject = " << yes_no(rep.reject) << "\n"
     << "  D(1) = " << rep.D1 << ", V = " << rep.V << ", N = " << rep.N
     << ", delta = " << rtc.delta << "\n";
  built.summary = os.str();
  return built;
}

// ---------------------------------------------------------------------------
// changepoint

Built cmd_changepoint(const KVConfig& cfg) {
  const Common common = parse_common(cfg);
  const std::string csv_path = cfg.require_string("csv");
  const double alpha = require_alpha(cfg);
  const int bridge_paths = cfg.get_int("bridge_paths", 20000);
  cfg.reject_unknown_keys();

  const Sample sample = ingest_csv(csv_path);
  Json warnings = Json::array();
  maybe_dimension_warning(warnings, sample.n(), kernel_dimension(common.spec, sample.p()));

  const CusumResult res = detect_change(sample, common.spec, alpha, bridge_paths,
                                        RngSpec{common.seed, kBridgeStream}, common.threads);

  std::vector<double> path_norms(res.path.values.rows());
  for (Eigen::Index r = 0; r < res.path.values.rows(); ++r)
    path_norms[r] = res.path.values.row(r).norm();

  Built built;
  built.out = common.out;
  built.results = {{"T_n", res.T_n},
                   {"k_hat", res.k_hat},
                   {"tau_hat", res.tau_hat},
                   {"q", res.q},
                   {"reject", res.reject},
                   {"bridge_paths", res.bridge_paths_used},
                   {"n", sample.n()},
                   {"path_norms", json_number_list(path_norms)}};
  built.diagnostics = {{"sigma_min_eigenvalue", res.sigma_min_eigenvalue},
                       {"sigma_clipped_mass", res.sigma_clipped_mass},
                       {"warnings", warnings}};
  std::ostringstream os;
  os << "changepoint: T_n = " << res.T_n << ", q = " << res.q
     << ", reject = " << yes_no(res.reject) << "\n"
     << "  k_hat = " << res.k_hat << ", tau_hat = " << res.tau_hat << "\n";
  built.summary = os.str();
  return built;
}

// ---------------------------------------------------------------------------
// size-study / power-study

struct RelevantDesign {
  DatasetDesign x;
  DatasetDesign y;
  double delta = 0.0;
  double delta_star = std::numeric_limits<double>::quiet_NaN();
};

RelevantDesign read_relevant_design(const KVConfig& cfg, const Common& common) {
  RelevantDesign design;
  const int p = cfg.require_int("p");
  if (p < 1) throw ConfigError("p must be >= 1");
  const int n_default = cfg.get_int("n", 0);
  design.x.n = cfg.get_int("n1", n_default);
  design.y.n = cfg.get_int("n2", n_default);
  if (design.x.n < 4 || design.y.n < 4) throw ConfigError("need n1, n2 >= 4 (set n or n1/n2)");
  design.x.p = design.y.p = p;

  const DesignKeys keys_x = read_design_keys(cfg, "", p, nullptr);
  const DesignKeys keys_y = read_design_keys(cfg, "_y", p, &keys_x);
  design.x.pre = to_sims(keys_x);
  design.y.pre = to_sims(keys_y);

  const std::string mode = cfg.get_string("delta_mode", "fixed");
  const bool need_closed_form = mode == "boundary" || mode == "scaled";
  if (need_closed_form) {
    try {
      const Vector tx = closed_form_theta(common.spec, to_marginals(design.x.pre));
      const Vector ty = closed_form_theta(common.spec, to_marginals(design.y.pre));
      design.delta_star = (tx - ty).squaredNorm();
    } catch (const InputError& e) {
      throw ConfigError(std::string("delta_mode '") + mode +
                        "' needs a closed-form theta: " + e.what());
    }
  }
  if (mode == "fixed") {
    design.delta = cfg.require_double("delta");
  } else if (mode == "boundary") {
    design.delta = design.delta_star;  // exact boundary of the null
  } else if (mode == "scaled") {
    const double factor = cfg.require_double("delta_scale");
    if (!(factor > 0.0)) throw ConfigError("delta_scale must be > 0");
    design.delta = factor * design.delta_star;
  } else {
    throw ConfigError("delta_mode must be fixed, boundary or scaled");
  }
  if (!(design.delta >= 0.0)) throw ConfigError("resolved delta must be >= 0");
  return design;
}

Built run_relevant_study(const KVConfig& cfg, bool power) {
  const Common common = parse_common(cfg);
  const int reps = require_replications(cfg);
  const double alpha = require_alpha(cfg);
  RelevantDesign design = read_relevant_design(cfg, common);
  const int w_paths = cfg.get_int("w_paths", 100000);
  const int w_grid = cfg.get_int("w_grid", 2048);
  const int lambda_grid = cfg.get_int("lambda_grid", 0);
  cfg.reject_unknown_keys();

  // The W limit is pivotal, so one simulated quantile serves every replication.
  const double q = scalar_quantile(
      sn_limit_sample(w_paths, w_grid, RngSpec{common.seed, kWStream}, common.threads), alpha);

  std::vector<int> rejects(reps, 0);
  std::vector<double> s_values(reps, 0.0);
  std::vector<double> d1_values(reps, 0.0);
  std::vector<int> degenerate(reps, 0);
  parallel_for(static_cast<std::size_t>(reps), common.threads, [&](std::size_t r) {
    RngStream gx(RngSpec{common.seed, kDataStream + r});
    RngStream gy(RngSpec{common.seed, kAuxDataStream + r});
    const Sample x = simulate_dataset(design.x, gx);
    const Sample y = simulate_dataset(design.y, gy);
    RelevantTestConfig rtc;
    rtc.delta = design.delta;
    rtc.alpha = alpha;
    rtc.lambda_grid_size = lambda_grid;
    rtc.w_paths = w_paths;
    rtc.w_grid = w_grid;
    rtc.rng = RngSpec{common.seed, kWStream};
    rtc.precomputed_q = q;
    rtc.threads = 1;
    const SNReport rep = run_relevant_test(x, y, common.spec, rtc);
    rejects[r] = rep.reject ? 1 : 0;
    s_values[r] = rep.S;
    d1_values[r] = rep.D1;
    degenerate[r] = rep.degenerate_v ? 1 : 0;
  });

  int total = 0;
  int degenerate_total = 0;
  for (int r = 0; r < reps; ++r) {
    total += rejects[r];
    degenerate_total += degenerate[r];
  }
  const double rate = static_cast<double>(total) / reps;
  const double se = std::sqrt(rate * (1.0 - rate) / reps);
  const double se_nominal = std::sqrt(alpha * (1.0 - alpha) / reps);

  Built built;
  built.out = common.out;
  built.results = {{"test", "relevant"},
                   {"replications", reps},
                   {"rejection_rate", rate},
                   {"se", se},
                   {"se_nominal", se_nominal},
                   {"q", q},
                   {"delta", design.delta},
                   {"delta_star", json_number(design.delta_star)},
                   {"rejects", rejects},
                   {"S", json_number_list(s_values)},
                   {"D1", json_number_list(d1_values)}};
  Json warnings = Json::array();
  maybe_dimension_warning(warnings, std::min(design.x.n, design.y.n),
                          kernel_dimension(common.spec, design.x.p));
  built.diagnostics = {{"low_replication", reps < 100},
                       {"degenerate_v_count", degenerate_total},
                       {"warnings", warnings}};
  std::ostringstream os;
  os << (power ? "power-study" : "size-study") << " (relevant): rate = " << rate
     << " +- " << se << " over R = " << reps << ", q = " << q
     << ", delta = " << design.delta << "\n";
  built.summary = os.str();
  return built;
}

DatasetDesign read_changepoint_design(const KVConfig& cfg, bool with_change) {
  DatasetDesign design;
  design.n = cfg.require_int("n");
  design.p = cfg.require_int("p");
  if (design.n < 5) throw ConfigError("n must be >= 5");
  if (design.p < 1) throw ConfigError("p must be >= 1");
  const DesignKeys keys = read_design_keys(cfg, "", design.p, nullptr);
  design.pre = to_sims(keys);
  if (with_change) {
    design.tau_star = cfg.require_double("tau_star");
    if (!(design.tau_star > 0.0 && design.tau_star < 1.0))
      throw ConfigError("tau_star must lie in (0,1)");
    const DesignKeys post = read_design_keys(cfg, "_post", design.p, &keys);
    design.post = to_sims(post);
    design.has_change = true;
  }
  return design;
}

Built run_changepoint_study(const KVConfig& cfg, bool power) {
  const Common common = parse_common(cfg);
  const int reps = require_replications(cfg);
  const double alpha = require_alpha(cfg);
  const DatasetDesign design = read_changepoint_design(cfg, power);
  const int bridge_paths = cfg.get_int("bridge_paths", 20000);
  cfg.reject_unknown_keys();

  std::vector<int> rejects(reps, 0);
  std::vector<double> t_values(reps, 0.0);
  std::vector<double> q_values(reps, 0.0);
  std::vector<double> tau_values(reps, 0.0);
  parallel_for(static_cast<std::size_t>(reps), common.threads, [&](std::size_t r) {
    RngStream g(RngSpec{common.seed, kDataStream + r});
    const Sample sample = simulate_dataset(design, g);
    const CusumResult res =
        detect_change(sample, common.spec, alpha, bridge_paths,
                      RngSpec{common.seed, kBridgeStream + r * kBridgeStride}, 1);
    rejects[r] = res.reject ? 1 : 0;
    t_values[r] = res.T_n;
    q_values[r] = res.q;
    tau_values[r] = res.tau_hat;
  });

  int total = 0;
  for (int r = 0; r < reps; ++r) total += rejects[r];
  const double rate = static_cast<double>(total) / reps;
  const double se = std::sqrt(rate * (1.0 - rate) / reps);

  Built built;
  built.out = common.out;
  built.results = {{"test", "changepoint"}, {"replications", reps},
                   {"rejection_rate", rate}, {"se", se},
                   {"se_nominal", std::sqrt(alpha * (1.0 - alpha) / reps)},
                   {"rejects", rejects},     {"T_n", json_number_list(t_values)},
                   {"q", json_number_list(q_values)},
                   {"tau_hat", json_number_list(tau_values)}};
  if (power) {
    std::vector<double> abs_err(reps);
    for (int r = 0; r < reps; ++r) abs_err[r] = std::fabs(tau_values[r] - design.tau_star);
    built.results["tau_star"] = design.tau_star;
    built.results["median_tau_hat"] = median(tau_values);
    built.results["median_tau_abs_err"] = median(abs_err);
  }
  Json warnings = Json::array();
  maybe_dimension_warning(warnings, design.n, kernel_dimension(common.spec, design.p));
  built.diagnostics = {{"low_replication", reps < 100}, {"warnings", warnings}};
  std::ostringstream os;
  os << (power ? "power-study" : "size-study") << " (changepoint): rate = " << rate << " +- "
     << se << " over R = " << reps << "\n";
  if (power)
    os << "  median tau_hat = " << built.results["median_tau_hat"].get<double>()
       << ", median |tau_hat - tau*| = "
       << built.results["median_tau_abs_err"].get<double>() << "\n";
  built.summary = os.str();
  return built;
}

Built cmd_study(const KVConfig& cfg, bool power) {
  const std::string test = cfg.require_string("test");
  if (test == "relevant") return run_relevant_study(cfg, power);
  if (test == "changepoint") return run_changepoint_study(cfg, power);
  throw ConfigError("test must be 'relevant' or 'changepoint'");
}

// ---------------------------------------------------------------------------
// coupling-check

Built cmd_coupling_check(const KVConfig& cfg) {
  const Common common = parse_common(cfg);
  if (common.spec.family != KernelFamily::GiniMeanDifference)
    throw ConfigError("coupling-check requires kernel = gmd (analytic Sigma)");
  const int reps = require_replications(cfg);
  DatasetDesign design = read_changepoint_design(cfg, false);
  if (dist_from_name(cfg.get_string("dist", "normal")) != Dist::Normal)
    throw ConfigError("coupling-check requires dist = normal (analytic Sigma)");
  const int bridge_paths = cfg.get_int("bridge_paths", 20000);
  cfg.reject_unknown_keys();

  std::vector<double> t_draws(reps, 0.0);
  parallel_for(static_cast<std::size_t>(reps), common.threads, [&](std::size_t r) {
    RngStream g(RngSpec{common.seed, kDataStream + r});
    const Sample sample = simulate_dataset(design, g);
    t_draws[r] = cusum_statistic(cusum_process(sample, common.spec)).T_n;
  });

  // Exact projection covariance of the GMD kernel under independent Gaussian
  // coordinates: Sigma = c_g diag(sigma^2).
  const double c_g = gmd_gaussian_projection_constant();
  Matrix root = Matrix::Zero(design.p, design.p);
  for (int l = 0; l < design.p; ++l)
    root(l, l) = std::sqrt(c_g) * design.pre[l].scale;

  const int grid = std::max(design.n, 512);
  const BridgePathSet sups = brownian_bridge_sups(root, grid, bridge_paths,
                                                  RngSpec{common.seed, kBridgeStream},
                                                  common.threads);
  const double ks = ks_distance(t_draws, sups.sup_norms);

  auto quantile_block = [](const std::vector<double>& v) {
    Json block = Json::object();
    for (double a : {0.5, 0.1, 0.05, 0.01}) {
      std::ostringstream key;
      key << "q" << 1.0 - a;
      block[key.str()] = scalar_quantile(v, a);
    }
    return block;
  };

  Built built;
  built.out = common.out;
  built.results = {{"ks_distance", ks},
                   {"replications", reps},
                   {"bridge_paths", bridge_paths},
                   {"bridge_grid", grid},
                   {"T_n", json_number_list(t_draws)},
                   {"T_n_quantiles", quantile_block(t_draws)},
                   {"bridge_sup_quantiles", quantile_block(sups.sup_norms)}};
  built.diagnostics = {{"sigma_model", "c_g * diag(scale^2)"}, {"c_g", c_g}};
  std::ostringstream os;
  os << "coupling-check: KS distance = " << ks << " (R = " << reps << " T_n draws vs "
     << bridge_paths << " bridge sups)\n";
  built.summary = os.str();
  return built;
}

// ---------------------------------------------------------------------------
// lemma1-check

constexpr std::uint64_t kLadderStride = std::uint64_t{1} << 20;

Built cmd_lemma1_check(const KVConfig& cfg) {
  const Common common = parse_common(cfg);
  const int p = cfg.require_int("p");
  if (p < 1) throw ConfigError("p must be >= 1");
  const DesignKeys keys = read_design_keys(cfg, "", p, nullptr);
  const std::vector<int> ladder = cfg.get_int_list("n_ladder", {250, 500, 1000, 2000});
  const int reps = cfg.get_int("replications", 200);
  if (reps < 1) throw ConfigError("replications must be >= 1");
  if (ladder.size() < 2) throw ConfigError("n_ladder needs at least two sizes");
  for (int n : ladder)
    if (n < 4) throw ConfigError("n_ladder entries must be >= 4");
  cfg.reject_unknown_keys();

  std::vector<double> ladder_d(ladder.begin(), ladder.end());
  std::vector<double> means(ladder.size(), 0.0);
  std::vector<double> ses(ladder.size(), 0.0);
  Json per_n = Json::array();
  for (std::size_t a = 0; a < ladder.size(); ++a) {
    DatasetDesign design;
    design.n = ladder[a];
    design.p = p;
    design.pre = to_sims(keys);
    std::vector<double> stats(reps, 0.0);
    parallel_for(static_cast<std::size_t>(reps), common.threads, [&](std::size_t r) {
      RngStream g(RngSpec{common.seed, kDataStream + a * kLadderStride + r});
      const Sample sample = simulate_dataset(design, g);
      stats[r] = lemma1_max_stat(sample, keys.mu);
    });
    long double acc = 0.0L;
    for (double s : stats) acc += s;
    const double mean = static_cast<double>(acc / reps);
    long double var = 0.0L;
    for (double s : stats) var += (s - mean) * (s - mean);
    const double se = reps > 1 ? std::sqrt(static_cast<double>(var) / (reps - 1) / reps) : 0.0;
    means[a] = mean;
    ses[a] = se;
    per_n.push_back({{"n", ladder[a]}, {"mean", mean}, {"se", se}});
  }
  const double exponent = log_log_slope(ladder_d, means);

  Built built;
  built.out = common.out;
  built.results = {{"per_n", per_n},
                   {"fitted_exponent", exponent},
                   {"replications", reps},
                   {"d", p}};
  built.diagnostics = {{"statistic", "max_k |M_k|_2 / (k-1), M_k = sum_{i<j<=k} f(X_i, X_j)"}};
  std::ostringstream os;
  os << "lemma1-check: fitted growth exponent = " << exponent << " over ladder";
  for (int n : ladder) os << ' ' << n;
  os << "\n";
  built.summary = os.str();
  return built;
}

// ---------------------------------------------------------------------------
// quantile-table

Built cmd_quantile_table(const KVConfig& cfg) {
  const Common common = parse_common(cfg);
  const std::vector<double> alphas = cfg.get_double_list("alphas", {0.10, 0.05, 0.01});
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alphas must lie in (0,1)");
  const int w_paths = cfg.get_int("w_paths", 100000);
  const int w_grid = cfg.get_int("w_grid", 2048);
  const int bridge_paths = cfg.get_int("bridge_paths", 20000);
  const int bridge_grid = cfg.get_int("bridge_grid", 512);

  Matrix sigma;
  bool have_sigma = false;
  if (cfg.has("sigma_diag")) {
    const std::vector<double> diag = cfg.get_double_list("sigma_diag", {});
    if (diag.empty()) throw ConfigError("sigma_diag must be a nonempty list");
    sigma = Matrix::Zero(diag.size(), diag.size());
    for (std::size_t l = 0; l < diag.size(); ++l) sigma(l, l) = diag[l];
    have_sigma = true;
  } else if (cfg.has("sigma_csv")) {
    const DataMatrix m = read_csv_matrix(cfg.require_string("sigma_csv"));
    sigma = m;
    have_sigma = true;
  }
  cfg.reject_unknown_keys();

  auto alpha_key = [](double a) {
    std::ostringstream os;
    os << a;
    return os.str();
  };

  Built built;
  built.out = common.out;
  const std::vector<double> w =
      sn_limit_sample(w_paths, w_grid, RngSpec{common.seed, kWStream}, common.threads);
  Json w_table = Json::object();
  for (double a : alphas) w_table[alpha_key(a)] = scalar_quantile(w, a);
  built.results = {{"w_quantiles", w_table},
                   {"w_paths", w_paths},
                   {"w_grid", w_grid}};
  built.diagnostics = Json::object();

  if (have_sigma) {
    const PsdSqrtResult root = psd_sqrt(sigma);
    const BridgePathSet sups =
        brownian_bridge_sups(root.root, bridge_grid, bridge_paths,
                             RngSpec{common.seed, kTableStream}, common.threads);
    Json b_table = Json::object();
    for (double a : alphas) b_table[alpha_key(a)] = sup_quantile(sups, a);
    built.results["bridge_sup_quantiles"] = b_table;
    built.results["bridge_paths"] = bridge_paths;
    built.results["bridge_grid"] = bridge_grid;
    built.diagnostics["sigma_clipped_mass"] = root.clipped_mass;
    built.diagnostics["sigma_min_eigenvalue"] = root.min_eigenvalue;
  }

  std::ostringstream os;
  os << "quantile-table: W quantiles";
  for (double a : alphas) os << " q" << 1.0 - a << " = " << w_table[alpha_key(a)].get<double>();
  os << "\n";
  built.summary = os.str();
  return built;
}

}  // namespace

double lemma1_max_stat(const Sample& sample, const std::vector<double>& mu) {
  const int n = sample.n();
  const int d = sample.p();
  if (static_cast<int>(mu.size()) != d)
    throw InputError("lemma1_max_stat: mu must have length p");
  std::vector<long double> m_acc(d, 0.0L);
  std::vector<double> centered(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i) {
    const double* row = sample.row(i);
    for (int l = 0; l < d; ++l) centered[static_cast<std::size_t>(i) * d + l] = row[l] - mu[l];
  }
  double best = 0.0;
  for (int k = 1; k < n; ++k) {
    const double* xk = centered.data() + static_cast<std::size_t>(k) * d;
    for (int i = 0; i < k; ++i) {
      const double* xi = centered.data() + static_cast<std::size_t>(i) * d;
      for (int l = 0; l < d; ++l) m_acc[l] += xi[l] * xk[l];
    }
    long double nrm2 = 0.0L;
    for (int l = 0; l < d; ++l) nrm2 += m_acc[l] * m_acc[l];
    const double stat = std::sqrt(static_cast<double>(nrm2)) / k;  // (k+1 obs) - 1
    if (stat > best) best = stat;
  }
  return best;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "relevant-test",  "changepoint",  "size-study", "power-study",
      "coupling-check", "lemma1-check", "quantile-table"};
  return names;
}

CommandResult run_command(const std::string& command, const KVConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Built built;
  if (command == "relevant-test") {
    built = cmd_relevant_test(cfg);
  } else if (command == "changepoint") {
    built = cmd_changepoint(cfg);
  } else if (command == "size-study") {
    built = cmd_study(cfg, false);
  } else if (command == "power-study") {
    built = cmd_study(cfg, true);
  } else if (command == "coupling-check") {
    built = cmd_coupling_check(cfg);
  } else if (command == "lemma1-check") {
    built = cmd_lemma1_check(cfg);
  } else if (command == "quantile-table") {
    built = cmd_quantile_table(cfg);
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }

  Json report;
  report["schema_version"] = kReportSchemaVersion;
  report["command"] = command;
  report["seed"] = cfg.get_u64("seed", 0);
  report["config"] = cfg.effective();
  report["results"] = built.results;
  report["diagnostics"] = built.diagnostics;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report["wall_clock_sec"] = elapsed.count();

  write_report(report, built.out);

  CommandResult result;
  result.report = std::move(report);
  result.summary = built.summary + "report written to " + built.out + "\n";
  result.out_path = built.out;
  return result;
}

}  // namespace ustat::bench
