#include "rgraph/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rgraph/parallel.hpp"

namespace rgraph {

namespace {

constexpr std::uint64_t kSampleStream = 0x73616d70;
constexpr std::uint64_t kPerturbStream = 0x70657274;
constexpr std::uint64_t kRepStream = 0x72657073;

}  // namespace

void validate(const ScenarioSpec& spec) {
  require(spec.d >= 1, ErrorCode::kInvalidArgument, "dimension must be positive");
  require(spec.delta >= 0.0, ErrorCode::kInvalidArgument, "delta must be nonnegative");
  const auto check_margin = [](const MarginSpec& ms) {
    require(ms.ar1_r >= 0.0 && ms.ar1_r < 1.0, ErrorCode::kInvalidArgument,
            "AR(1) parameter must be in [0, 1)");
    if (ms.family == Family::kStudentT)
      require(ms.nu > 0.0, ErrorCode::kInvalidArgument, "t degrees of freedom must be positive");
  };
  check_margin(spec.first);
  check_margin(spec.second);
  if (spec.is_changepoint) {
    require(spec.length >= 2, ErrorCode::kInvalidArgument, "sequence length must be at least 2");
    require(spec.tau >= 1 && spec.tau < spec.length, ErrorCode::kInvalidArgument,
            "tau must be inside the sequence");
  } else {
    require(spec.m >= 1 && spec.n >= 1, ErrorCode::kInvalidArgument,
            "sample sizes must be positive");
  }
  if (spec.second.cov_rule == CovRule::kAr1FromDelta)
    require(spec.delta < 1.0, ErrorCode::kInvalidArgument,
            "delta is the AR(1) parameter here and must be below 1");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kNormal: return "normal";
    case Family::kLognormal: return "lognormal";
    case Family::kStudentT: return "t";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "normal") return Family::kNormal;
  if (name == "lognormal") return Family::kLognormal;
  if (name == "t") return Family::kStudentT;
  fail(ErrorCode::kInvalidArgument, "unknown family: " + name);
}

const char* mean_rule_name(MeanRule r) {
  switch (r) {
    case MeanRule::kZero: return "zero";
    case MeanRule::kDeltaOverSqrtD: return "delta_over_sqrt_d";
    case MeanRule::kDelta: return "delta";
    case MeanRule::kDeltaOverD: return "delta_over_d";
    case MeanRule::kFirstSqrtD: return "first_sqrt_d";
    case MeanRule::kFirstCbrtD: return "first_cbrt_d";
  }
  return "unknown";
}

MeanRule mean_rule_from_name(const std::string& name) {
  if (name == "zero") return MeanRule::kZero;
  if (name == "delta_over_sqrt_d") return MeanRule::kDeltaOverSqrtD;
  if (name == "delta") return MeanRule::kDelta;
  if (name == "delta_over_d") return MeanRule::kDeltaOverD;
  if (name == "first_sqrt_d") return MeanRule::kFirstSqrtD;
  if (name == "first_cbrt_d") return MeanRule::kFirstCbrtD;
  fail(ErrorCode::kInvalidArgument, "unknown mean rule: " + name);
}

const char* cov_rule_name(CovRule r) {
  switch (r) {
    case CovRule::kIdentity: return "identity";
    case CovRule::kAr1: return "ar1";
    case CovRule::kAr1Scaled: return "ar1_scaled";
    case CovRule::kAr1RidgeSqrtD: return "ar1_ridge_sqrt_d";
    case CovRule::kAr1Ridge: return "ar1_ridge";
    case CovRule::kAr1RidgeHalf: return "ar1_ridge_half";
    case CovRule::kAr1FromDelta: return "ar1_from_delta";
    case CovRule::kIdentityScaled: return "identity_scaled";
    case CovRule::kIdentityFrobenius: return "identity_frobenius";
  }
  return "unknown";
}

CovRule cov_rule_from_name(const std::string& name) {
  if (name == "identity") return CovRule::kIdentity;
  if (name == "ar1") return CovRule::kAr1;
  if (name == "ar1_scaled") return CovRule::kAr1Scaled;
  if (name == "ar1_ridge_sqrt_d") return CovRule::kAr1RidgeSqrtD;
  if (name == "ar1_ridge") return CovRule::kAr1Ridge;
  if (name == "ar1_ridge_half") return CovRule::kAr1RidgeHalf;
  if (name == "ar1_from_delta") return CovRule::kAr1FromDelta;
  if (name == "identity_scaled") return CovRule::kIdentityScaled;
  if (name == "identity_frobenius") return CovRule::kIdentityFrobenius;
  fail(ErrorCode::kInvalidArgument, "unknown covariance rule: " + name);
}

MarginSampler::MarginSampler(const MarginSpec& spec, int d, double delta) : d_(d), spec_(spec) {
  mean_ = Eigen::VectorXd::Zero(d);
  switch (spec.mean_rule) {
    case MeanRule::kZero: break;
    case MeanRule::kDeltaOverSqrtD: mean_.setConstant(delta / std::sqrt(double(d))); break;
    case MeanRule::kDelta: mean_.setConstant(delta); break;
    case MeanRule::kDeltaOverD: mean_.setConstant(delta / double(d)); break;
    case MeanRule::kFirstSqrtD: {
      const int k = std::max(1, static_cast<int>(std::floor(std::sqrt(double(d)))));
      mean_.head(k).setConstant(delta);
      break;
    }
    case MeanRule::kFirstCbrtD: {
      const int k = std::max(1, static_cast<int>(std::floor(std::cbrt(double(d)))));
      mean_.head(k).setConstant(delta);
      break;
    }
  }

  double r = 0.0, scale = 1.0, ridge = 0.0;
  switch (spec.cov_rule) {
    case CovRule::kIdentity: break;
    case CovRule::kAr1: r = spec.ar1_r; break;
    case CovRule::kAr1Scaled:
      r = spec.ar1_r;
      scale = delta;
      break;
    case CovRule::kAr1RidgeSqrtD:
      r = spec.ar1_r;
      ridge = delta / std::sqrt(double(d));
      break;
    case CovRule::kAr1Ridge:
      r = spec.ar1_r;
      ridge = delta;
      break;
    case CovRule::kAr1RidgeHalf:
      r = spec.ar1_r;
      ridge = delta / 2.0;
      break;
    case CovRule::kAr1FromDelta: r = delta; break;
    case CovRule::kIdentityScaled: scale = delta; break;
    case CovRule::kIdentityFrobenius: scale = 1.0 + 0.3 / std::sqrt(double(d)); break;
  }
  require(r >= 0.0 && r < 1.0, ErrorCode::kInvalidArgument, "AR(1) parameter must be in [0, 1)");
  require(scale > 0.0, ErrorCode::kInvalidArgument, "covariance scale must be positive");

  if (ridge > 0.0) {
    Eigen::MatrixXd cov(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cov(i, j) = scale * std::pow(r, std::abs(i - j));
    cov.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    require(llt.info() == Eigen::Success, ErrorCode::kInvalidArgument,
            "covariance is not positive definite");
    chol_ = llt.matrixL();
    use_chol_ = true;
  } else {
    scale_sqrt_ = std::sqrt(scale);
    spec_.ar1_r = r;  // effective recursion parameter (covers ar1_from_delta)
  }
}

void MarginSampler::sample_row(Rng& rng, double* out) const {
  Eigen::Map<Eigen::VectorXd> x(out, d_);
  if (use_chol_) {
    Eigen::VectorXd z(d_);
    for (int i = 0; i < d_; ++i) z(i) = rng.normal();
    x = chol_ * z;
  } else {
    const double r = spec_.ar1_r;
    const double innovation = std::sqrt(1.0 - r * r);
    double prev = rng.normal();
    x(0) = prev;
    for (int i = 1; i < d_; ++i) {
      prev = r * prev + innovation * rng.normal();
      x(i) = prev;
    }
    x *= scale_sqrt_;
  }

  switch (spec_.family) {
    case Family::kNormal:
      x += mean_;
      break;
    case Family::kLognormal:
      x = (x + mean_).array().exp();
      break;
    case Family::kStudentT: {
      const double w = rng.chi_square(spec_.nu);
      x = mean_ + x / std::sqrt(w / spec_.nu);
      break;
    }
  }
}

Eigen::VectorXd MarginSampler::sample_row(Rng& rng) const {
  Eigen::VectorXd row(d_);
  sample_row(rng, row.data());
  return row;
}

namespace {

Dataset sample_block(const MarginSampler& sampler, Rng& rng, int rows, int d, int id_offset) {
  Dataset ds;
  ds.values.resize(rows, d);
  ds.row_ids.reserve(static_cast<std::size_t>(rows));
  Eigen::VectorXd row(d);
  for (int i = 0; i < rows; ++i) {
    sampler.sample_row(rng, row.data());
    ds.values.row(i) = row.transpose();
    ds.row_ids.push_back(std::to_string(id_offset + i + 1));
  }
  return ds;
}

}  // namespace

std::pair<Dataset, Dataset> sample_two(const ScenarioSpec& spec, std::uint64_t seed) {
  validate(spec);
  require(!spec.is_changepoint, ErrorCode::kInvalidArgument,
          "two-sample draw requested from a change-point scenario");
  Rng rng(derive_seed(seed, kSampleStream));
  const MarginSampler first(spec.first, spec.d, spec.delta);
  const MarginSampler second(spec.second, spec.d, spec.delta);
  Dataset x = sample_block(first, rng, spec.m, spec.d, 0);
  Dataset y = sample_block(second, rng, spec.n, spec.d, spec.m);
  return {std::move(x), std::move(y)};
}

Dataset sample_sequence(const ScenarioSpec& spec, std::uint64_t seed) {
  validate(spec);
  require(spec.is_changepoint, ErrorCode::kInvalidArgument,
          "sequence draw requested from a two-sample scenario");
  Rng rng(derive_seed(seed, kSampleStream));
  const MarginSampler pre(spec.first, spec.d, spec.delta);
  const MarginSampler post(spec.second, spec.d, spec.delta);

  Dataset seq;
  seq.values.resize(spec.length, spec.d);
  seq.row_ids.reserve(static_cast<std::size_t>(spec.length));
  Eigen::VectorXd row(spec.d);
  for (int i = 0; i < spec.length; ++i) {
    const MarginSampler& sampler = i < spec.tau ? pre : post;
    sampler.sample_row(rng, row.data());
    seq.values.row(i) = row.transpose();
    seq.row_ids.push_back(std::to_string(i + 1));
  }
  return seq;
}

const char* perturb_kind_name(PerturbKind kind) {
  switch (kind) {
    case PerturbKind::kRandom: return "random";
    case PerturbKind::kOutlier: return "outlier";
    case PerturbKind::kHub: return "hub";
  }
  return "unknown";
}

PerturbKind perturb_kind_from_name(const std::string& name) {
  if (name == "random") return PerturbKind::kRandom;
  if (name == "outlier") return PerturbKind::kOutlier;
  if (name == "hub") return PerturbKind::kHub;
  fail(ErrorCode::kInvalidArgument, "unknown perturbation kind: " + name);
}

LabelVector perturb(const LabelVector& labels, const Dataset& pooled,
                    const DirectedGraph* graph, const Perturbation& pk, std::uint64_t seed) {
  const int n_total = labels.size();
  require(pk.count >= 1 && pk.count < std::min(labels.m, labels.n),
          ErrorCode::kInvalidArgument, "perturbation count must be below min(m, n)");

  std::vector<int> flip;
  switch (pk.kind) {
    case PerturbKind::kRandom: {
      Rng rng(derive_seed(seed, kPerturbStream));
      flip = rng.sample_without_replacement(n_total, pk.count);
      break;
    }
    case PerturbKind::kOutlier: {
      require(pooled.n() == n_total, ErrorCode::kInvalidArgument,
              "pooled data does not match the label vector");
      const Eigen::RowVectorXd center = pooled.values.colwise().mean();
      std::vector<std::pair<double, int>> by_distance;
      by_distance.reserve(static_cast<std::size_t>(n_total));
      for (int i = 0; i < n_total; ++i)
        by_distance.emplace_back((pooled.values.row(i) - center).norm(), i);
      std::partial_sort(by_distance.begin(), by_distance.begin() + pk.count, by_distance.end(),
                        [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                        });
      for (int i = 0; i < pk.count; ++i) flip.push_back(by_distance[static_cast<std::size_t>(i)].second);
      break;
    }
    case PerturbKind::kHub: {
      require(graph != nullptr, ErrorCode::kInvalidArgument,
              "hub perturbation needs the similarity graph");
      const GraphStats s = graph_stats(*graph);
      std::vector<std::pair<int, int>> by_degree;
      by_degree.reserve(static_cast<std::size_t>(n_total));
      for (int i = 0; i < n_total; ++i)
        by_degree.emplace_back(s.degree[static_cast<std::size_t>(i)], i);
      std::partial_sort(by_degree.begin(), by_degree.begin() + pk.count, by_degree.end(),
                        [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                        });
      for (int i = 0; i < pk.count; ++i) flip.push_back(by_degree[static_cast<std::size_t>(i)].second);
      break;
    }
  }

  std::vector<int> flipped = labels.labels;
  for (int i : flip)
    flipped[static_cast<std::size_t>(i)] = flipped[static_cast<std::size_t>(i)] == 1 ? 2 : 1;
  return make_labels(std::move(flipped));
}

PowerEstimate estimate_power(const ScenarioSpec& spec, const TestConfig& cfg, int reps,
                             double alpha, const std::optional<Perturbation>& perturbation) {
  validate(spec);
  validate(cfg);
  require(reps >= 1, ErrorCode::kInvalidArgument, "need at least one replication");

  std::vector<char> rejected(static_cast<std::size_t>(reps), 0);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepStream, rep);
    TestConfig rep_cfg = cfg;
    rep_cfg.seed = rep_seed;

    const auto [x, y] = sample_two(spec, rep_seed);
    TestResult result;
    if (perturbation) {
      const Dataset pooled = pool_datasets(x, y);
      const BuiltGraph built = build_graph(pooled, rep_cfg);
      const LabelVector observed =
          perturb(make_labels(pooled.labels), pooled, &built.graph, *perturbation, rep_seed);
      result = test_on_graph(built.graph, observed, rep_cfg, built.converged);
    } else {
      result = two_sample_test(x, y, rep_cfg);
    }
    rejected[rep] = result.pvalue <= alpha ? 1 : 0;
  });

  PowerEstimate estimate;
  estimate.reps = reps;
  for (char r : rejected) estimate.rejections += r;
  estimate.power = static_cast<double>(estimate.rejections) / reps;
  estimate.std_error = std::sqrt(estimate.power * (1.0 - estimate.power) / reps);
  return estimate;
}

std::vector<LambdaScanRow> lambda_scan(const RankMatrix& ranks, const std::vector<double>& grid,
                                       int k, std::uint64_t seed) {
  require(!grid.empty(), ErrorCode::kInvalidArgument, "lambda grid is empty");
  std::vector<LambdaScanRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t idx) {
    KrnngOptions options;
    options.lambda = grid[idx];
    options.seed = derive_seed(seed, 0x6c736372, idx);
    const KrnngResult r = build_krnng(ranks, k, options);
    rows[idx] = {grid[idx], static_cast<double>(graph_stats(r.graph).max_degree), {}};
  });
  return rows;
}

std::vector<LambdaScanRow> lambda_scan_scenario(const ScenarioSpec& spec,
                                                const std::vector<double>& grid,
                                                const TestConfig& cfg, int reps, double alpha) {
  require(!grid.empty(), ErrorCode::kInvalidArgument, "lambda grid is empty");
  validate(spec);
  require(reps >= 1, ErrorCode::kInvalidArgument, "need at least one replication");

  std::vector<LambdaScanRow> rows;
  rows.reserve(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    TestConfig lambda_cfg = cfg;
    lambda_cfg.graph = GraphKind::kKrnng;
    lambda_cfg.lambda = grid[idx];

    std::vector<int> max_degrees(static_cast<std::size_t>(reps), 0);
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
      const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepStream, rep);
      const auto [x, y] = sample_two(spec, rep_seed);
      const Dataset pooled = pool_datasets(x, y);
      TestConfig rep_cfg = lambda_cfg;
      rep_cfg.seed = rep_seed;
      const BuiltGraph built = build_graph(pooled, rep_cfg);
      max_degrees[rep] = graph_stats(built.graph).max_degree;
    });
    double mean_max = 0.0;
    for (int v : max_degrees) mean_max += v;
    mean_max /= reps;

    const PowerEstimate pe = estimate_power(spec, lambda_cfg, reps, alpha);
    rows.push_back({grid[idx], mean_max, pe.power});
  }
  return rows;
}

CpPowerAccuracy cp_power_accuracy(const ScenarioSpec& spec, const ScanConfig& cfg, int reps,
                                  double alpha) {
  validate(spec);
  validate(cfg);
  require(spec.is_changepoint, ErrorCode::kInvalidArgument,
          "change-point power needs a change-point scenario");
  require(reps >= 1, ErrorCode::kInvalidArgument, "need at least one replication");

  std::vector<char> detected(static_cast<std::size_t>(reps), 0);
  std::vector<char> accurate(static_cast<std::size_t>(reps), 0);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepStream, rep);
    ScanConfig rep_cfg = cfg;
    rep_cfg.seed = rep_seed;
    const Dataset seq = sample_sequence(spec, rep_seed);
    const ScanResult result = scan(seq, rep_cfg);
    if (result.pvalue <= alpha) {
      detected[rep] = 1;
      if (std::abs(result.tau_hat - spec.tau) <= 10) accurate[rep] = 1;
    }
  });

  CpPowerAccuracy out;
  out.reps = reps;
  for (int i = 0; i < reps; ++i) {
    out.detections += detected[static_cast<std::size_t>(i)];
    out.accurate += accurate[static_cast<std::size_t>(i)];
  }
  out.power = static_cast<double>(out.detections) / reps;
  out.accuracy = static_cast<double>(out.accurate) / reps;
  out.power_se = std::sqrt(out.power * (1.0 - out.power) / reps);
  return out;
}

namespace {

MarginSpec margin(Family family, double nu, MeanRule mean_rule, CovRule cov_rule, double r) {
  MarginSpec ms;
  ms.family = family;
  ms.nu = nu;
  ms.mean_rule = mean_rule;
  ms.cov_rule = cov_rule;
  ms.ar1_r = r;
  return ms;
}

ScenarioSpec two_sample_spec(int d, int m, int n, double delta, MarginSpec first,
                             MarginSpec second) {
  ScenarioSpec s;
  s.d = d;
  s.m = m;
  s.n = n;
  s.delta = delta;
  s.first = first;
  s.second = second;
  return s;
}

ScenarioSpec changepoint_spec(int d, int length, int tau, double delta, MarginSpec pre,
                              MarginSpec post) {
  ScenarioSpec s;
  s.d = d;
  s.delta = delta;
  s.first = pre;
  s.second = post;
  s.is_changepoint = true;
  s.length = length;
  s.tau = tau;
  return s;
}

}  // namespace

ScenarioSpec scenario_preset(const std::string& name) {
  using F = Family;
  using M = MeanRule;
  using C = CovRule;

  // Two-sample benchmark scenarios: location and/or scale differences for
  // symmetric, asymmetric and heavy-tailed distributions.
  if (name == "intro-1")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kNormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kNormal, 5, M::kDeltaOverSqrtD, C::kAr1RidgeSqrtD, 0.5));
  if (name == "intro-2")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kLognormal, 5, M::kZero, C::kAr1, 0.6),
                           margin(F::kLognormal, 5, M::kFirstSqrtD, C::kAr1, 0.2));
  if (name == "intro-3")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kStudentT, 5, M::kZero, C::kAr1, 0.6),
                           margin(F::kStudentT, 5, M::kFirstCbrtD, C::kAr1, 0.6));

  // Mean shift / mean+scale shift settings used for the power comparisons.
  if (name == "power-1")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kNormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kNormal, 5, M::kDeltaOverSqrtD, C::kAr1, 0.5));
  if (name == "power-2")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kNormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kNormal, 5, M::kDeltaOverSqrtD, C::kAr1RidgeSqrtD, 0.5));
  if (name == "power-3")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kLognormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kLognormal, 5, M::kDeltaOverSqrtD, C::kAr1, 0.5));
  if (name == "power-4")
    return two_sample_spec(500, 100, 100, 0.0, margin(F::kStudentT, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kStudentT, 5, M::kDeltaOverSqrtD, C::kAr1RidgeSqrtD, 0.5));

  // Scale-heavy settings used for the penalty-weight scan.
  if (name == "lambda-1")
    return two_sample_spec(500, 200, 100, 1.03, margin(F::kNormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kNormal, 5, M::kZero, C::kAr1Scaled, 0.5));
  if (name == "lambda-2")
    return two_sample_spec(1000, 100, 200, 0.05,
                           margin(F::kLognormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kLognormal, 5, M::kDelta, C::kAr1, 0.5));
  if (name == "lambda-3")
    return two_sample_spec(100, 100, 100, 1.15, margin(F::kLognormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kLognormal, 5, M::kZero, C::kAr1Scaled, 0.5));
  if (name == "lambda-4")
    return two_sample_spec(500, 100, 100, 1.35, margin(F::kStudentT, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kStudentT, 5, M::kZero, C::kAr1Scaled, 0.5));
  if (name == "lambda-5")
    return two_sample_spec(500, 300, 100, 0.095, margin(F::kStudentT, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kStudentT, 5, M::kDelta, C::kAr1, 0.5));

  // Heavier-tailed two-sample benchmark settings.
  if (name == "ts-1")
    return two_sample_spec(50, 100, 100, 0.0, margin(F::kNormal, 5, M::kZero, C::kAr1, 0.5),
                           margin(F::kNormal, 5, M::kDeltaOverSqrtD, C::kAr1RidgeSqrtD, 0.5));
  if (name == "ts-2")
    return two_sample_spec(50, 100, 100, 0.0, margin(F::kLognormal, 5, M::kZero, C::kAr1, 0.6),
                           margin(F::kLognormal, 5, M::kFirstSqrtD, C::kAr1, 0.2));
  if (name == "ts-3")
    return two_sample_spec(50, 100, 100, 0.0, margin(F::kStudentT, 2, M::kZero, C::kAr1, 0.5),
                           margin(F::kStudentT, 2, M::kDeltaOverSqrtD, C::kAr1Ridge, 0.5));
  if (name == "ts-4")
    return two_sample_spec(50, 100, 100, 0.0, margin(F::kStudentT, 1, M::kZero, C::kAr1, 0.5),
                           margin(F::kStudentT, 1, M::kDeltaOverSqrtD, C::kAr1RidgeHalf, 0.5));

  // Scale-only toy alternatives; delta plays the role of the covariance
  // scale sigma. The "fro" variant fixes the covariance-difference
  // Frobenius norm at 0.3, i.e. sigma = 1 + 0.3 / sqrt(d); our
  // reconstruction of an under-specified setting.
  if (name == "toy-scale")
    return two_sample_spec(1000, 100, 100, 1.01, margin(F::kNormal, 5, M::kZero, C::kIdentity, 0),
                           margin(F::kNormal, 5, M::kZero, C::kIdentityScaled, 0));
  if (name == "toy-scale-fro")
    return two_sample_spec(1000, 100, 100, 0.0, margin(F::kNormal, 5, M::kZero, C::kIdentity, 0),
                           margin(F::kNormal, 5, M::kZero, C::kIdentityFrobenius, 0));

  // Change-point settings plus an i.i.d. null for calibration.
  if (name == "cp-1")
    return changepoint_spec(100, 400, 200, 0.0, margin(F::kNormal, 5, M::kZero, C::kAr1, 0.5),
                            margin(F::kNormal, 5, M::kDeltaOverSqrtD, C::kAr1RidgeSqrtD, 0.5));
  if (name == "cp-2")
    return changepoint_spec(100, 400, 200, 0.0, margin(F::kNormal, 5, M::kZero, C::kIdentity, 0),
                            margin(F::kNormal, 5, M::kZero, C::kAr1FromDelta, 0));
  if (name == "cp-3")
    return changepoint_spec(100, 400, 200, 0.0, margin(F::kStudentT, 5, M::kZero, C::kAr1, 0.5),
                            margin(F::kStudentT, 5, M::kDeltaOverD, C::kAr1Ridge, 0.5));
  if (name == "cp-null")
    return changepoint_spec(10, 100, 50, 0.0, margin(F::kNormal, 5, M::kZero, C::kIdentity, 0),
                            margin(F::kNormal, 5, M::kZero, C::kIdentity, 0));

  fail(ErrorCode::kInvalidArgument, "unknown scenario preset: " + name);
}

std::vector<std::string> scenario_preset_names() {
  return {"intro-1", "intro-2",  "intro-3",  "power-1",  "power-2", "power-3", "power-4",
          "lambda-1", "lambda-2", "lambda-3", "lambda-4", "lambda-5", "ts-1",   "ts-2",
          "ts-3",     "ts-4",     "toy-scale", "toy-scale-fro", "cp-1", "cp-2", "cp-3",
          "cp-null"};
}

}  // namespace rgraph
