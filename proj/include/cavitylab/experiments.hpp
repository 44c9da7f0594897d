#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cavitylab/cavity.hpp"
#include "cavitylab/models.hpp"

namespace cavitylab {

struct MeasureOptions {
  int threads = 0;  // 0 = hardware concurrency
  BruteOptions brute;
  CeOptions ce;
  BnbOptions bnb;
};

struct DecayEstimate {
  int depth = 0;
  double mean_gap = 0.0;
  double stderr_ = 0.0;
  int trials = 0;    // included trials
  int excluded = 0;  // infeasible trials, recorded and left out of the mean
  std::string fingerprint;
};

// E|CE(r, C) - CE(r, C')| at action x = 1 on a uniformly random root of a
// fresh instance per trial.
std::vector<DecayEstimate> measure_decay(const ModelSpec& spec,
                                         const std::vector<int>& depths, int trials,
                                         std::pair<BoundaryCondition, BoundaryCondition> bc_pair,
                                         std::uint64_t master_seed,
                                         const MeasureOptions& opts = {});

struct MisclassRow {
  int depth = 0;
  double rate = 0.0;     // fraction of (instance, node) pairs with x^r != x*
  double stderr_ = 0.0;  // over per-instance fractions
  int trials = 0;
  int excluded = 0;  // trials with a non-unique brute-force optimum
};

std::vector<MisclassRow> measure_misclassification(const ModelSpec& spec,
                                                   const std::vector<int>& depths, int trials,
                                                   std::uint64_t master_seed,
                                                   const MeasureOptions& opts = {});

struct SuboptRow {
  int depth = 0;
  double mean_gap = 0.0;  // E[J - F(x^r)] over feasible trials
  double stderr_ = 0.0;
  int trials = 0;
  int infeasible = 0;  // trials whose decision total was -inf
};

std::vector<SuboptRow> measure_suboptimality(const ModelSpec& spec,
                                             const std::vector<int>& depths, int trials,
                                             std::uint64_t master_seed,
                                             const MeasureOptions& opts = {});

struct MwisRatioRow {
  int n = 0;
  int delta = 0;
  double mean_w_star = 0.0;  // Monte-Carlo E[W(I*)]
  double stderr_w = 0.0;
  int max_cardinality = 0;  // |I^M|
  double ratio = 0.0;       // mean_w_star / |I^M|
  double ratio_stderr = 0.0;
  int trials = 0;
  bool lower_bound_ok = false;  // ratio >= 1 - 4 * ratio_stderr
};

// Fixed topology, Exp(1) weights resampled per trial; W(I*) from branch and
// bound. The 10*log(Delta) upper bound is asymptotic and only reported.
MwisRatioRow measure_mwis_ratio(const GraphSpec& graph_spec, int trials,
                                std::uint64_t master_seed, const MeasureOptions& opts = {});

struct MomentCheck {
  double lhs = 0.0;  // mean exp(-C(i))
  double rhs = 0.0;  // 1 - (1/2) mean exp(-sum_l C_{\...}(i_l))
  double diff_stderr = 0.0;
  double z = 0.0;  // mean per-trial (lhs - rhs) over its stderr
  int trials = 0;
};

MomentCheck measure_moment_identity(const GraphTopology& graph, int node, int trials,
                                    std::uint64_t master_seed, const MeasureOptions& opts = {});

// CSV row shared by every experiment; the header is the file-format contract:
// experiment,model,graph,n,delta,r,trials,estimate,stderr,excluded,seed
struct ReportRow {
  std::string experiment;
  std::string model;
  std::string graph;
  int n = 0;
  int delta = 0;
  int r = 0;
  long trials = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  long excluded = 0;
  std::uint64_t seed = 0;
};

std::string report_csv(const std::vector<ReportRow>& rows);
// Shortest-round-trip decimal text for a double (CSV cells are bit-faithful).
std::string format_double(double v);

}  // namespace cavitylab
