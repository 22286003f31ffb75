#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rgraph/changepoint.hpp"
#include "rgraph/inference.hpp"

namespace rgraph {

enum class Family { kNormal, kLognormal, kStudentT };

/// Mean vector as a function of the shift delta and the dimension.
enum class MeanRule {
  kZero,
  kDeltaOverSqrtD,  // delta / sqrt(d) on every coordinate
  kDelta,           // delta on every coordinate
  kDeltaOverD,      // delta / d on every coordinate
  kFirstSqrtD,      // delta on the first floor(sqrt(d)) coordinates
  kFirstCbrtD,      // delta on the first floor(d^(1/3)) coordinates
};

/// Covariance as a function of delta, the AR(1) parameter r and d.
/// The AR(1) matrix has entries r^|i-j|.
enum class CovRule {
  kIdentity,
  kAr1,                // ar1(r)
  kAr1Scaled,          // delta * ar1(r)
  kAr1RidgeSqrtD,      // ar1(r) + (delta / sqrt(d)) * I
  kAr1Ridge,           // ar1(r) + delta * I
  kAr1RidgeHalf,       // ar1(r) + (delta / 2) * I
  kAr1FromDelta,       // ar1(delta)
  kIdentityScaled,     // delta * I
  kIdentityFrobenius,  // (1 + 0.3 / sqrt(d)) * I
};

struct MarginSpec {
  Family family = Family::kNormal;
  double nu = 5.0;  // degrees of freedom for the t family
  MeanRule mean_rule = MeanRule::kZero;
  CovRule cov_rule = CovRule::kIdentity;
  double ar1_r = 0.0;
};

/// Declarative description of a simulation scenario: either a two-sample
/// draw (m rows from `first`, n rows from `second`) or a time-ordered
/// sequence with a change after row tau.
struct ScenarioSpec {
  int d = 10;
  int m = 50;
  int n = 50;
  double delta = 0.0;
  MarginSpec first;
  MarginSpec second;
  bool is_changepoint = false;
  int length = 0;  // sequence length N (change-point form)
  int tau = 0;     // last row drawn from `first`
};

void validate(const ScenarioSpec& spec);

const char* family_name(Family f);
const char* mean_rule_name(MeanRule r);
const char* cov_rule_name(CovRule r);
Family family_from_name(const std::string& name);
MeanRule mean_rule_from_name(const std::string& name);
CovRule cov_rule_from_name(const std::string& name);

/// Draws one row at a time from a margin. Pure AR(1) covariances are
/// sampled by the exact recursion x_1 = z_1, x_i = r x_{i-1} +
/// sqrt(1 - r^2) z_i; covariances with a ridge go through a Cholesky
/// factor computed once.
class MarginSampler {
 public:
  MarginSampler(const MarginSpec& spec, int d, double delta);

  void sample_row(Rng& rng, double* out) const;
  Eigen::VectorXd sample_row(Rng& rng) const;

 private:
  int d_;
  MarginSpec spec_;
  Eigen::VectorXd mean_;
  double scale_sqrt_ = 1.0;  // sqrt of the covariance scale, recursion path
  Eigen::MatrixXd chol_;     // lower factor; empty on the recursion path
  bool use_chol_ = false;
};

std::pair<Dataset, Dataset> sample_two(const ScenarioSpec& spec, std::uint64_t seed);
Dataset sample_sequence(const ScenarioSpec& spec, std::uint64_t seed);

enum class PerturbKind { kRandom, kOutlier, kHub };

const char* perturb_kind_name(PerturbKind kind);
PerturbKind perturb_kind_from_name(const std::string& name);

struct Perturbation {
  PerturbKind kind = PerturbKind::kRandom;
  int count = 5;
};

/// Flips the labels of `count` nodes: uniformly random nodes, the nodes
/// furthest from the pooled coordinatewise mean, or the largest-degree
/// nodes of the graph (ties by smaller index).
LabelVector perturb(const LabelVector& labels, const Dataset& pooled,
                    const DirectedGraph* graph, const Perturbation& pk, std::uint64_t seed);

struct PowerEstimate {
  double power = 0.0;
  double std_error = 0.0;
  int reps = 0;
  int rejections = 0;
};

/// Fraction of replications with p <= alpha; per-replicate seeds are
/// derived from cfg.seed, so results are bit-identical across runs and
/// thread counts.
PowerEstimate estimate_power(const ScenarioSpec& spec, const TestConfig& cfg, int reps,
                             double alpha,
                             const std::optional<Perturbation>& perturbation = {});

struct LambdaScanRow {
  double lambda = 0.0;
  double max_degree = 0.0;
  std::optional<double> power;
};

/// Max degree of the penalized graph across a lambda grid on one dataset.
std::vector<LambdaScanRow> lambda_scan(const RankMatrix& ranks, const std::vector<double>& grid,
                                       int k, std::uint64_t seed);

/// Same scan on a scenario: mean max degree over `reps` draws per lambda,
/// plus estimated power at that lambda.
std::vector<LambdaScanRow> lambda_scan_scenario(const ScenarioSpec& spec,
                                                const std::vector<double>& grid,
                                                const TestConfig& cfg, int reps, double alpha);

struct CpPowerAccuracy {
  double power = 0.0;
  double accuracy = 0.0;  // significant and |tau_hat - tau| <= 10
  double power_se = 0.0;
  int reps = 0;
  int detections = 0;
  int accurate = 0;
};

CpPowerAccuracy cp_power_accuracy(const ScenarioSpec& spec, const ScanConfig& cfg, int reps,
                                  double alpha);

/// Named scenario presets covering the simulation settings the library
/// reproduces. Parameters (d, m, n, delta, nu, length, tau) can be
/// overridden after lookup.
ScenarioSpec scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

}  // namespace rgraph
