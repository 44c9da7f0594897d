#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cavitylab/mwis.hpp"
#include "cavitylab/network.hpp"

namespace cavitylab {

struct GraphTopology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  int max_degree() const;
};

struct GraphSpec {
  enum class Kind { Cycle, Path, Grid, RandomRegular, ErdosRenyi, RandomTree };
  Kind kind = Kind::Cycle;
  int n = 0;
  int rows = 0, cols = 0;   // Grid
  int degree = 0;           // RandomRegular
  double p = 0.0;           // ErdosRenyi edge probability
  int dmax = 0;             // ErdosRenyi degree bound
  std::uint64_t seed = 0;

  static GraphSpec cycle(int n);
  static GraphSpec path(int n);
  static GraphSpec grid(int rows, int cols);
  static GraphSpec random_regular(int n, int degree, std::uint64_t seed);
  static GraphSpec erdos_renyi(int n, double p, int dmax, std::uint64_t seed);
  static GraphSpec random_tree(int n, std::uint64_t seed);

  std::string describe() const;
};

// Pairing-model random regular graphs reject loops/multi-edges; the retry cap
// turns pathological parameters into a clean error.
GraphTopology generate_graph(const GraphSpec& spec);

struct ModelSpec {
  enum class Kind {
    Uniform,              // Phi_u(0)=0, Phi_u(1)~U[-I1,I1]; edge entries U[-I2,I2]
    Gaussian,             // Phi_v(1)=0, Phi_v(0)~N(0,sigma_p^2); edge entries N(0,sigma_e^2)
    GaussianCorrelated,   // per-edge 4-vector ~ N(mu, S); Phi_v(0)~N(mu_p, sigma_p^2)
    MwisExp,              // weighted graph, Exp(1) weights
    MwisMixture,          // weighted graph, exponential-mixture weights
    MapBernoulliGauss,    // MAP-estimation preset: Bernoulli causes, Gaussian observations
  };
  Kind kind = Kind::Uniform;
  double i1 = 1.0, i2 = 0.0;
  double sigma_e = 0.0, sigma_p = 0.0;
  std::array<double, 4> mu{};                // order (00, 01, 10, 11)
  std::array<std::array<double, 4>, 4> cov{};
  double mu_p = 0.0;
  double rho = 0.0;
  int delta = 0;
  double p_cause = 0.5, sigma_obs = 1.0;
  GraphSpec graph;
  std::uint64_t seed = 0;

  static ModelSpec uniform(double i1, double i2, GraphSpec g, std::uint64_t seed);
  static ModelSpec gaussian(double sigma_e, double sigma_p, GraphSpec g, std::uint64_t seed);
  static ModelSpec gaussian_correlated(std::array<double, 4> mu,
                                       std::array<std::array<double, 4>, 4> cov,
                                       double mu_p, double sigma_p, GraphSpec g,
                                       std::uint64_t seed);
  static ModelSpec mwis_exp(GraphSpec g, std::uint64_t seed);
  static ModelSpec mwis_mixture(double rho, int delta, GraphSpec g, std::uint64_t seed);
  static ModelSpec map_bernoulli_gauss(double p_cause, double sigma_obs, GraphSpec g,
                                       std::uint64_t seed);

  bool is_mwis() const { return kind == Kind::MwisExp || kind == Kind::MwisMixture; }
  std::string describe() const;
};

using Instance = std::variant<DecisionNetwork, WeightedGraph>;

// Deterministic given the spec (all streams are keyed by (seed, entity id)).
Instance generate(const ModelSpec& spec);
// Same, but MWIS kinds are encoded into their decision-network form.
DecisionNetwork generate_network(const ModelSpec& spec);

// Problem encoders (optimum of the encoding = combinatorial optimum).
DecisionNetwork encode_mwis(const WeightedGraph& g);
DecisionNetwork encode_coloring(const GraphTopology& g, int q,
                                const std::vector<std::vector<double>>& weights);

struct Clause {  // (l1 OR l2), literal = variable index + negation flag
  int a = 0;
  bool neg_a = false;
  int b = 0;
  bool neg_b = false;
};
DecisionNetwork encode_max2sat(int num_vars, const std::vector<Clause>& clauses);

struct CouplingParams {
  double a = 0.0;
  double b = 0.0;
  std::optional<double> k_y;  // a.s. bound on |Y_e|; absent when unbounded
  double k_phi = 0.0;
};

// Closed-form coupling parameters for the Uniform and Gaussian models.
CouplingParams coupling_params(const ModelSpec& spec);

struct ConditionReport {
  std::optional<bool> thm1;        // uniform-costs sufficient condition (beta form)
  std::optional<bool> thm2;        // gaussian-costs sufficient condition
  std::optional<bool> cond_first;  // a(D-1) + sqrt(b*K_phi)(D-1)^{3/2} < 1
  std::optional<bool> cond_third;  // a(D-1) + b*K_Y*(D-1)^2 < 1
  std::optional<bool> mixture_ok;  // mixture matrix contraction
  std::optional<double> beta;
  std::optional<CouplingParams> coupling;
  std::optional<double> theta;
};

ConditionReport check_conditions(const ModelSpec& spec, int delta);

}  // namespace cavitylab
