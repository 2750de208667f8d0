#include "mrp/chain.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mrp/errors.hpp"

namespace mrp {

namespace {

// Reachable set from `start` over edges selected by `edge`.
std::vector<char> reachable(std::size_t m, std::size_t start,
                            const std::function<bool(std::size_t, std::size_t)>& edge) {
  std::vector<char> seen(m, 0);
  std::vector<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.back();
    queue.pop_back();
    for (std::size_t v = 0; v < m; ++v) {
      if (!seen[v] && edge(u, v)) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

StochasticMatrix validate_chain(Matrix raw, double tol) {
  if (!raw.square() || raw.rows() == 0)
    throw Error(ErrorCode::NotSquare, "transition matrix must be square with m >= 1");
  const std::size_t m = raw.rows();

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (raw(i, j) < 0.0)
        throw Error(ErrorCode::NegativeEntry,
                    "p[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] < 0");

  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += raw(i, j);
    if (std::abs(sum - 1.0) > tol)
      throw Error(ErrorCode::RowSumViolation,
                  "row " + std::to_string(i + 1) + " sums to " + std::to_string(sum));
    for (std::size_t j = 0; j < m; ++j) raw(i, j) /= sum;
  }

  // Strong connectivity of the support graph: forward reachability plus
  // reachability on the transposed graph, both from state 1.
  auto fwd = reachable(m, 0, [&](std::size_t u, std::size_t v) { return raw(u, v) > 0.0; });
  auto bwd = reachable(m, 0, [&](std::size_t u, std::size_t v) { return raw(v, u) > 0.0; });
  for (std::size_t i = 0; i < m; ++i)
    if (!fwd[i] || !bwd[i])
      throw Error(ErrorCode::Reducible,
                  "state " + std::to_string(i + 1) + " does not communicate with state 1");

  return StochasticMatrix(std::move(raw));
}

std::size_t chain_period(const StochasticMatrix& chain) {
  const Matrix& p = chain.p();
  const std::size_t m = chain.size();
  // BFS levels from state 1; the period is the gcd of level[u]+1-level[v]
  // over support edges (u,v). Valid because the chain is irreducible.
  std::vector<long> level(m, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  std::size_t head = 0;
  while (head < queue.size()) {
    const std::size_t u = queue[head++];
    for (std::size_t v = 0; v < m; ++v) {
      if (p(u, v) > 0.0 && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long g = 0;
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v)
      if (p(u, v) > 0.0) g = std::gcd(g, level[u] + 1 - level[v]);
  return static_cast<std::size_t>(g < 0 ? -g : g);
}

MrpSpec MrpSpec::dtmc(StochasticMatrix chain) {
  Vec mu = ones(chain.size());
  return MrpSpec(std::move(chain), std::move(mu), std::nullopt, ChainKind::Dtmc);
}

MrpSpec MrpSpec::with_means(StochasticMatrix chain, Vec mu, ChainKind kind) {
  if (mu.size() != chain.size())
    throw Error(ErrorCode::BadSpec, "mean sojourn vector length does not match state count");
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i]))
      throw Error(ErrorCode::NonpositiveSojourn, "mu[" + std::to_string(i + 1) + "] <= 0");
  return MrpSpec(std::move(chain), std::move(mu), std::nullopt, kind);
}

MrpSpec MrpSpec::with_moments(StochasticMatrix chain, Matrix p1, ChainKind kind) {
  const std::size_t m = chain.size();
  if (!p1.square() || p1.rows() != m)
    throw Error(ErrorCode::BadSpec, "moment matrix shape does not match state count");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double mij = p1(i, j);
      if (mij < 0.0)
        throw Error(ErrorCode::NegativeEntry,
                    "mu[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] < 0");
      if (mij != 0.0 && chain.p()(i, j) == 0.0)
        throw Error(ErrorCode::MomentOffSupport,
                    "mu[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                        "] > 0 on a zero-probability transition");
    }
  }
  Vec mu = p1.row_sums();
  for (std::size_t i = 0; i < m; ++i)
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i]))
      throw Error(ErrorCode::NonpositiveSojourn, "mu[" + std::to_string(i + 1) + "] <= 0");
  return MrpSpec(std::move(chain), std::move(mu), std::move(p1), kind);
}

Vec stationary_embedded(const StochasticMatrix& chain) {
  const std::size_t m = chain.size();
  const Matrix& p = chain.p();
  // (I - P)ᵀ pi = 0 is rank m-1; swap the last equation for eᵀpi = 1.
  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) - p(j, i);
  for (std::size_t j = 0; j < m; ++j) a(m - 1, j) = 1.0;
  Vec rhs(m, 0.0);
  rhs[m - 1] = 1.0;
  try {
    return solve_dense(a, rhs);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular)
      throw Error(ErrorCode::SingularSystem, "stationary system singular for validated chain");
    throw;
  }
}

StationaryProfile stationary_profile(const MrpSpec& spec) {
  StationaryProfile out;
  out.pi = stationary_embedded(spec.chain());
  out.mu = spec.mean_sojourn();
  for (std::size_t i = 0; i < out.mu.size(); ++i)
    if (!(out.mu[i] > 0.0))
      throw Error(ErrorCode::NonpositiveSojourn, "mu[" + std::to_string(i + 1) + "] <= 0");
  out.lambda = dot(out.pi, out.mu);
  out.varpi.resize(out.pi.size());
  for (std::size_t i = 0; i < out.pi.size(); ++i)
    out.varpi[i] = out.pi[i] * out.mu[i] / out.lambda;
  return out;
}

}  // namespace mrp
