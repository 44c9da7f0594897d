#include "cavitylab/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "cavitylab/errors.hpp"
#include "cavitylab/rng.hpp"

namespace cavitylab {

int GraphTopology::max_degree() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  int d = 0;
  for (int x : deg) d = std::max(d, x);
  return d;
}

GraphSpec GraphSpec::cycle(int n) { return {Kind::Cycle, n}; }
GraphSpec GraphSpec::path(int n) { return {Kind::Path, n}; }
GraphSpec GraphSpec::grid(int rows, int cols) {
  GraphSpec s{Kind::Grid, rows * cols};
  s.rows = rows;
  s.cols = cols;
  return s;
}
GraphSpec GraphSpec::random_regular(int n, int degree, std::uint64_t seed) {
  GraphSpec s{Kind::RandomRegular, n};
  s.degree = degree;
  s.seed = seed;
  return s;
}
GraphSpec GraphSpec::erdos_renyi(int n, double p, int dmax, std::uint64_t seed) {
  GraphSpec s{Kind::ErdosRenyi, n};
  s.p = p;
  s.dmax = dmax;
  s.seed = seed;
  return s;
}
GraphSpec GraphSpec::random_tree(int n, std::uint64_t seed) {
  GraphSpec s{Kind::RandomTree, n};
  s.seed = seed;
  return s;
}

std::string GraphSpec::describe() const {
  switch (kind) {
    case Kind::Cycle: return "cycle(" + std::to_string(n) + ")";
    case Kind::Path: return "path(" + std::to_string(n) + ")";
    case Kind::Grid: return "grid(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
    case Kind::RandomRegular:
      return "rr(" + std::to_string(n) + "," + std::to_string(degree) + ")";
    case Kind::ErdosRenyi:
      return "er(" + std::to_string(n) + ",p=" + std::to_string(p) +
             ",dmax=" + std::to_string(dmax) + ")";
    case Kind::RandomTree: return "tree(" + std::to_string(n) + ")";
  }
  return "?";
}

namespace {

GraphTopology random_regular_pairing(int n, int d, std::uint64_t seed) {
  if (n * d % 2 != 0 || d >= n) {
    throw InvalidParams("random regular graph needs n*d even and d < n");
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Rng rng{seed, 0x9E6ull, static_cast<std::uint64_t>(attempt)};
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < d; ++k) stubs.push_back(v);
    }
    for (int i = static_cast<int>(stubs.size()) - 1; i > 0; --i) {
      std::swap(stubs[static_cast<std::size_t>(i)], stubs[static_cast<std::size_t>(rng.below(i + 1))]);
    }
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) { ok = false; break; }
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second) { ok = false; break; }
    }
    if (ok) {
      GraphTopology g;
      g.n = n;
      g.edges.assign(seen.begin(), seen.end());
      return g;
    }
  }
  throw InvalidParams("random regular pairing failed after 1000 attempts (n=" +
                      std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

}  // namespace

GraphTopology generate_graph(const GraphSpec& spec) {
  GraphTopology g;
  g.n = spec.n;
  if (spec.n < 0) throw InvalidParams("graph size n must be >= 0");
  switch (spec.kind) {
    case GraphSpec::Kind::Cycle:
      if (spec.n < 3) throw InvalidParams("cycle needs n >= 3");
      for (int v = 0; v + 1 < spec.n; ++v) g.edges.emplace_back(v, v + 1);
      g.edges.emplace_back(0, spec.n - 1);
      break;
    case GraphSpec::Kind::Path:
      for (int v = 0; v + 1 < spec.n; ++v) g.edges.emplace_back(v, v + 1);
      break;
    case GraphSpec::Kind::Grid: {
      if (spec.rows < 1 || spec.cols < 1) throw InvalidParams("grid needs rows, cols >= 1");
      g.n = spec.rows * spec.cols;
      auto id = [&](int r, int c) { return r * spec.cols + c; };
      for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
          if (c + 1 < spec.cols) g.edges.emplace_back(id(r, c), id(r, c + 1));
          if (r + 1 < spec.rows) g.edges.emplace_back(id(r, c), id(r + 1, c));
        }
      }
      break;
    }
    case GraphSpec::Kind::RandomRegular:
      return random_regular_pairing(spec.n, spec.degree, spec.seed);
    case GraphSpec::Kind::ErdosRenyi: {
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InvalidParams("p must lie in [0,1]");
      if (spec.dmax < 1) throw InvalidParams("dmax must be >= 1");
      std::vector<int> deg(static_cast<std::size_t>(spec.n), 0);
      for (int u = 0; u < spec.n; ++u) {
        for (int v = u + 1; v < spec.n; ++v) {
          Rng rng{spec.seed, 0xE4ull, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)};
          if (!rng.bernoulli(spec.p)) continue;
          if (deg[static_cast<std::size_t>(u)] >= spec.dmax ||
              deg[static_cast<std::size_t>(v)] >= spec.dmax) {
            continue;  // degree bound wins over the coin
          }
          g.edges.emplace_back(u, v);
          ++deg[static_cast<std::size_t>(u)];
          ++deg[static_cast<std::size_t>(v)];
        }
      }
      break;
    }
    case GraphSpec::Kind::RandomTree: {
      for (int v = 1; v < spec.n; ++v) {
        Rng rng{spec.seed, 0x7EEull, static_cast<std::uint64_t>(v)};
        g.edges.emplace_back(rng.below(v), v);
      }
      break;
    }
  }
  return g;
}

ModelSpec ModelSpec::uniform(double i1, double i2, GraphSpec g, std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::Uniform;
  s.i1 = i1;
  s.i2 = i2;
  s.graph = g;
  s.seed = seed;
  return s;
}
ModelSpec ModelSpec::gaussian(double sigma_e, double sigma_p, GraphSpec g, std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::Gaussian;
  s.sigma_e = sigma_e;
  s.sigma_p = sigma_p;
  s.graph = g;
  s.seed = seed;
  return s;
}
ModelSpec ModelSpec::gaussian_correlated(std::array<double, 4> mu,
                                         std::array<std::array<double, 4>, 4> cov,
                                         double mu_p, double sigma_p, GraphSpec g,
                                         std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::GaussianCorrelated;
  s.mu = mu;
  s.cov = cov;
  s.mu_p = mu_p;
  s.sigma_p = sigma_p;
  s.graph = g;
  s.seed = seed;
  return s;
}
ModelSpec ModelSpec::mwis_exp(GraphSpec g, std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::MwisExp;
  s.graph = g;
  s.seed = seed;
  return s;
}
ModelSpec ModelSpec::mwis_mixture(double rho, int delta, GraphSpec g, std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::MwisMixture;
  s.rho = rho;
  s.delta = delta;
  s.graph = g;
  s.seed = seed;
  return s;
}
ModelSpec ModelSpec::map_bernoulli_gauss(double p_cause, double sigma_obs, GraphSpec g,
                                         std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::MapBernoulliGauss;
  s.p_cause = p_cause;
  s.sigma_obs = sigma_obs;
  s.graph = g;
  s.seed = seed;
  return s;
}

std::string ModelSpec::describe() const {
  std::string m;
  switch (kind) {
    case Kind::Uniform:
      m = "uniform(i1=" + std::to_string(i1) + ",i2=" + std::to_string(i2) + ")";
      break;
    case Kind::Gaussian:
      m = "gauss(se=" + std::to_string(sigma_e) + ",sp=" + std::to_string(sigma_p) + ")";
      break;
    case Kind::GaussianCorrelated:
      m = "gauss-corr(sp=" + std::to_string(sigma_p) + ")";
      break;
    case Kind::MwisExp: m = "mwis-exp"; break;
    case Kind::MwisMixture:
      m = "mwis-mix(rho=" + std::to_string(rho) + ",delta=" + std::to_string(delta) + ")";
      break;
    case Kind::MapBernoulliGauss:
      m = "map-bg(p=" + std::to_string(p_cause) + ",so=" + std::to_string(sigma_obs) + ")";
      break;
  }
  return m + "|" + graph.describe();
}

namespace {

// Symmetric 4x4 eigendecomposition (cyclic Jacobi), for sampling N(mu, S)
// with tolerance-based PSD repair.
void jacobi_eigen4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& eval,
                   std::array<std::array<double, 4>, 4>& evec) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) evec[i][j] = i == j ? 1.0 : 0.0;
  }
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < 4; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          double vkp = evec[k][p], vkq = evec[k][q];
          evec[k][p] = c * vkp - s * vkq;
          evec[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  for (int i = 0; i < 4; ++i) eval[i] = a[i][i];
}

// Factor L with L L^T = repaired S; eigenvalues below 1e-12 are clipped to 0.
std::array<std::array<double, 4>, 4> psd_factor(const std::array<std::array<double, 4>, 4>& s) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(s[i][j] - s[j][i]) > 1e-9 * (1.0 + std::abs(s[i][j]))) {
        throw InvalidParams("covariance matrix must be symmetric");
      }
    }
  }
  std::array<double, 4> eval{};
  std::array<std::array<double, 4>, 4> evec{};
  jacobi_eigen4(s, eval, evec);
  std::array<std::array<double, 4>, 4> l{};
  for (int i = 0; i < 4; ++i) {
    double lam = eval[i] < 1e-12 ? 0.0 : eval[i];
    double root = std::sqrt(lam);
    for (int k = 0; k < 4; ++k) l[k][i] = evec[k][i] * root;
  }
  return l;
}

std::vector<std::vector<double>> zero_potentials(int n, int t) {
  return std::vector<std::vector<double>>(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(t), 0.0));
}

}  // namespace

Instance generate(const ModelSpec& spec) {
  GraphTopology topo = generate_graph(spec.graph);
  const int n = topo.n;
  switch (spec.kind) {
    case ModelSpec::Kind::Uniform: {
      if (!(spec.i1 > 0.0) || !(spec.i2 >= 0.0)) {
        throw InvalidParams("uniform model requires i1 > 0 and i2 >= 0");
      }
      auto pots = zero_potentials(n, 2);
      for (int v = 0; v < n; ++v) {
        Rng rng{spec.seed, 0x01ull, static_cast<std::uint64_t>(v)};
        pots[static_cast<std::size_t>(v)][1] = rng.uniform(-spec.i1, spec.i1);
      }
      std::vector<EdgeSpec> edges;
      for (const auto& [u, v] : topo.edges) {
        Rng rng{spec.seed, 0x02ull, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)};
        EdgeSpec e{u, v, {}};
        for (int k = 0; k < 4; ++k) e.table.push_back(ExtReal{rng.uniform(-spec.i2, spec.i2)});
        edges.push_back(std::move(e));
      }
      return DecisionNetwork(2, std::move(pots), std::move(edges));
    }
    case ModelSpec::Kind::Gaussian: {
      if (!(spec.sigma_e >= 0.0) || !(spec.sigma_p >= 0.0)) {
        throw InvalidParams("gaussian model requires sigma_e, sigma_p >= 0");
      }
      auto pots = zero_potentials(n, 2);
      for (int v = 0; v < n; ++v) {
        Rng rng{spec.seed, 0x03ull, static_cast<std::uint64_t>(v)};
        pots[static_cast<std::size_t>(v)][0] = rng.normal(0.0, spec.sigma_p);
      }
      std::vector<EdgeSpec> edges;
      for (const auto& [u, v] : topo.edges) {
        Rng rng{spec.seed, 0x04ull, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)};
        EdgeSpec e{u, v, {}};
        for (int k = 0; k < 4; ++k) e.table.push_back(ExtReal{rng.normal(0.0, spec.sigma_e)});
        edges.push_back(std::move(e));
      }
      return DecisionNetwork(2, std::move(pots), std::move(edges));
    }
    case ModelSpec::Kind::GaussianCorrelated: {
      if (!(spec.sigma_p >= 0.0)) throw InvalidParams("sigma_p must be >= 0");
      auto l = psd_factor(spec.cov);
      auto pots = zero_potentials(n, 2);
      for (int v = 0; v < n; ++v) {
        Rng rng{spec.seed, 0x05ull, static_cast<std::uint64_t>(v)};
        pots[static_cast<std::size_t>(v)][0] = rng.normal(spec.mu_p, spec.sigma_p);
      }
      std::vector<EdgeSpec> edges;
      for (const auto& [u, v] : topo.edges) {
        Rng rng{spec.seed, 0x06ull, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)};
        std::array<double, 4> z{};
        for (double& zi : z) zi = rng.normal();
        EdgeSpec e{u, v, {}};
        for (int row = 0; row < 4; ++row) {
          double val = spec.mu[static_cast<std::size_t>(row)];
          for (int k = 0; k < 4; ++k) val += l[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
          e.table.push_back(ExtReal{val});  // order (00, 01, 10, 11) row-major
        }
        edges.push_back(std::move(e));
      }
      return DecisionNetwork(2, std::move(pots), std::move(edges));
    }
    case ModelSpec::Kind::MwisExp:
      return WeightedGraph(n, topo.edges, sample_weights(n, WeightDist::exp1(), spec.seed));
    case ModelSpec::Kind::MwisMixture:
      return WeightedGraph(n, topo.edges,
                           sample_weights(n, WeightDist::mixture(spec.rho, spec.delta), spec.seed));
    case ModelSpec::Kind::MapBernoulliGauss: {
      if (!(spec.p_cause > 0.0 && spec.p_cause < 1.0) || !(spec.sigma_obs > 0.0)) {
        throw InvalidParams("map model requires p_cause in (0,1) and sigma_obs > 0");
      }
      auto pots = zero_potentials(n, 2);
      std::vector<int> cause(static_cast<std::size_t>(n), 0);
      const double bias = std::log(spec.p_cause / (1.0 - spec.p_cause));
      for (int v = 0; v < n; ++v) {
        Rng rng{spec.seed, 0x07ull, static_cast<std::uint64_t>(v)};
        cause[static_cast<std::size_t>(v)] = rng.bernoulli(spec.p_cause) ? 1 : 0;
        pots[static_cast<std::size_t>(v)][1] = bias;
      }
      const double norm = -std::log(spec.sigma_obs * std::sqrt(2.0 * std::numbers::pi));
      std::vector<EdgeSpec> edges;
      for (const auto& [u, v] : topo.edges) {
        Rng rng{spec.seed, 0x08ull, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)};
        double obs = rng.normal(cause[static_cast<std::size_t>(u)] + cause[static_cast<std::size_t>(v)],
                                spec.sigma_obs);
        EdgeSpec e{u, v, {}};
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            double d = (obs - a - b) / spec.sigma_obs;
            e.table.push_back(ExtReal{norm - 0.5 * d * d});
          }
        }
        edges.push_back(std::move(e));
      }
      return DecisionNetwork(2, std::move(pots), std::move(edges));
    }
  }
  throw InvalidParams("unknown model kind");
}

DecisionNetwork generate_network(const ModelSpec& spec) {
  Instance inst = generate(spec);
  if (std::holds_alternative<DecisionNetwork>(inst)) {
    return std::get<DecisionNetwork>(std::move(inst));
  }
  return encode_mwis(std::get<WeightedGraph>(inst));
}

DecisionNetwork encode_mwis(const WeightedGraph& g) {
  auto pots = zero_potentials(g.num_nodes(), 2);
  for (int v = 0; v < g.num_nodes(); ++v) pots[static_cast<std::size_t>(v)][1] = g.weight(v);
  std::vector<EdgeSpec> edges;
  for (const auto& [u, v] : g.edges()) {
    edges.push_back(EdgeSpec{u, v, {ExtReal{0.0}, ExtReal{0.0}, ExtReal{0.0}, ExtReal::neg_inf()}});
  }
  return DecisionNetwork(2, std::move(pots), std::move(edges));
}

DecisionNetwork encode_coloring(const GraphTopology& g, int q,
                                const std::vector<std::vector<double>>& weights) {
  if (q < 2) throw EncodeError("coloring requires q >= 2 colors");
  if (static_cast<int>(weights.size()) != g.n) {
    throw EncodeError("coloring weights must have one row per node");
  }
  std::vector<std::vector<double>> pots(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v) {
    if (static_cast<int>(weights[static_cast<std::size_t>(v)].size()) != q) {
      throw EncodeError("coloring weights row " + std::to_string(v) + " must have q entries");
    }
    pots[static_cast<std::size_t>(v)] = weights[static_cast<std::size_t>(v)];
  }
  std::vector<EdgeSpec> edges;
  for (const auto& [u, v] : g.edges) {
    EdgeSpec e{u, v, {}};
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        e.table.push_back(a == b ? ExtReal::neg_inf() : ExtReal{0.0});
      }
    }
    edges.push_back(std::move(e));
  }
  return DecisionNetwork(q, std::move(pots), std::move(edges));
}

DecisionNetwork encode_max2sat(int num_vars, const std::vector<Clause>& clauses) {
  if (num_vars < 1) throw EncodeError("max2sat requires at least one variable");
  std::map<std::pair<int, int>, std::array<double, 4>> tables;
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    const Clause& c = clauses[k];
    if (c.a < 0 || c.a >= num_vars || c.b < 0 || c.b >= num_vars) {
      throw EncodeError("clause " + std::to_string(k) + " references an invalid variable");
    }
    if (c.a == c.b) {
      throw EncodeError("clause " + std::to_string(k) + " must use two distinct variables");
    }
    int u = c.a, v = c.b;
    bool neg_u = c.neg_a, neg_v = c.neg_b;
    if (u > v) {
      std::swap(u, v);
      std::swap(neg_u, neg_v);
    }
    auto& t = tables[{u, v}];
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        bool lit_u = (x == (neg_u ? 0 : 1));
        bool lit_v = (y == (neg_v ? 0 : 1));
        if (lit_u || lit_v) t[static_cast<std::size_t>(x * 2 + y)] += 1.0;
      }
    }
  }
  std::vector<EdgeSpec> edges;
  for (const auto& [uv, t] : tables) {
    EdgeSpec e{uv.first, uv.second, {}};
    for (double val : t) e.table.push_back(ExtReal{val});
    edges.push_back(std::move(e));
  }
  return DecisionNetwork(2, zero_potentials(num_vars, 2), std::move(edges));
}

CouplingParams coupling_params(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelSpec::Kind::Uniform: {
      if (!(spec.i1 > 0.0) || !(spec.i2 >= 0.0)) {
        throw InvalidParams("uniform model requires i1 > 0 and i2 >= 0");
      }
      CouplingParams cp;
      cp.a = spec.i2 / (2.0 * spec.i1);
      cp.b = 1.0 / (2.0 * spec.i1);
      cp.k_y = 4.0 * spec.i2;
      cp.k_phi = 2.0 * spec.i2 / std::sqrt(3.0);
      return cp;
    }
    case ModelSpec::Kind::Gaussian:
    case ModelSpec::Kind::GaussianCorrelated: {
      std::array<double, 4> mu = spec.mu;
      std::array<std::array<double, 4>, 4> s = spec.cov;
      if (spec.kind == ModelSpec::Kind::Gaussian) {
        mu = {0, 0, 0, 0};
        s = {};
        for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = spec.sigma_e * spec.sigma_e;
      }
      // index order (00, 01, 10, 11)
      const double sp2 = spec.sigma_p * spec.sigma_p;
      const double s1sq = s[2][2] - 2.0 * s[2][3] + s[3][3] + sp2;
      const double s2sq = s[0][0] - 2.0 * s[0][1] + s[1][1] + sp2;
      if (!(s1sq > 0.0) || !(s2sq > 0.0)) {
        throw InvalidParams("degenerate gaussian model: sigma_1 or sigma_2 vanishes");
      }
      const double s1 = std::sqrt(s1sq), s2 = std::sqrt(s2sq);
      const double rho = (s[0][2] - s[0][3] - s[1][2] + s[1][3] + sp2) / (s1 * s2);
      const double denom_sq = (s1sq + s2sq) * (s1sq + s2sq) - 4.0 * rho * rho * s1sq * s2sq;
      const double c = (s2sq - s1sq) / std::sqrt(denom_sq);
      if (!(std::abs(c) < 1.0) || !std::isfinite(c)) {
        throw UnsupportedCorrelation("coupling parameters require |C| < 1, got C = " +
                                     std::to_string(c));
      }
      const double sx = std::sqrt(s1sq + s2sq + 2.0 * rho * s1 * s2);
      const double sy = std::sqrt(std::max(0.0, s1sq + s2sq - 2.0 * rho * s1 * s2));
      if (!(sx > 0.0)) throw InvalidParams("degenerate gaussian model: sigma_X vanishes");
      CouplingParams cp;
      const double pi = std::numbers::pi;
      cp.a = std::atan(std::sqrt(1.0 / (1.0 - c * c)) * sy / sx) / pi +
             std::sqrt(2.0 / pi) * std::abs(mu[0] + mu[3] - mu[2] - mu[1]) / sx;
      cp.b = std::sqrt(2.0 / pi) / sx;
      double l2 = 0.0;
      for (int i = 0; i < 4; ++i) l2 += s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] + mu[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)];
      cp.k_phi = std::sqrt(l2);
      return cp;
    }
    default:
      throw InvalidParams("coupling_params is defined for the uniform and gaussian models");
  }
}

ConditionReport check_conditions(const ModelSpec& spec, int delta) {
  if (delta < 2) throw InvalidParams("check_conditions requires delta >= 2");
  ConditionReport rep;
  const double dm1 = delta - 1;
  switch (spec.kind) {
    case ModelSpec::Kind::Uniform: {
      const double beta = 5.0 * spec.i2 / (2.0 * spec.i1);
      rep.beta = beta;
      rep.thm1 = beta * dm1 * dm1 < 1.0;
      CouplingParams cp = coupling_params(spec);
      rep.coupling = cp;
      rep.cond_first = cp.a * dm1 + std::sqrt(cp.b * cp.k_phi) * std::pow(dm1, 1.5) < 1.0;
      rep.cond_third = cp.a * dm1 + cp.b * (*cp.k_y) * dm1 * dm1 < 1.0;
      break;
    }
    case ModelSpec::Kind::Gaussian: {
      const double beta =
          std::sqrt(spec.sigma_e * spec.sigma_e /
                    (spec.sigma_e * spec.sigma_e + spec.sigma_p * spec.sigma_p));
      rep.beta = beta;
      rep.thm2 = beta * dm1 + std::sqrt(beta * dm1 * dm1 * dm1) < 1.0;
      CouplingParams cp = coupling_params(spec);
      rep.coupling = cp;
      rep.cond_first = cp.a * dm1 + std::sqrt(cp.b * cp.k_phi) * std::pow(dm1, 1.5) < 1.0;
      break;
    }
    case ModelSpec::Kind::GaussianCorrelated: {
      CouplingParams cp = coupling_params(spec);
      rep.coupling = cp;
      rep.cond_first = cp.a * dm1 + std::sqrt(cp.b * cp.k_phi) * std::pow(dm1, 1.5) < 1.0;
      break;
    }
    case ModelSpec::Kind::MwisMixture: {
      MixtureCheck mc = mixture_matrix_check(spec.rho, delta);
      rep.mixture_ok = mc.holds;
      rep.theta = mc.theta;
      break;
    }
    case ModelSpec::Kind::MwisExp:
    case ModelSpec::Kind::MapBernoulliGauss:
      break;
  }
  return rep;
}

}  // namespace cavitylab
