#include "besovcap/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "besovcap/angular_grid.hpp"
#include "besovcap/gauss_legendre.hpp"
#include "besovcap/parallel.hpp"
#include "besovcap/reduction.hpp"

namespace besovcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_order(int order) {
  if (order < 4) throw std::invalid_argument("radial Gauss order must be at least 4");
}

double resolve_cutoff(const AnalyticFunction& f, const RadialQuadrature& radial) {
  const double delta = radial.cutoff > 0.0 ? radial.cutoff : default_cutoff(f);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("radial cutoff must lie in (0, 1)");
  return delta;
}

std::vector<Exponent> distinct_p(std::span<const BesovParams> params) {
  std::vector<Exponent> ps;
  for (const BesovParams& bp : params) {
    if (std::find(ps.begin(), ps.end(), bp.p) == ps.end()) ps.push_back(bp.p);
  }
  return ps;
}

bool any_sup(std::span<const BesovParams> params) {
  return std::any_of(params.begin(), params.end(), [](const BesovParams& bp) { return bp.q.is_infinite(); });
}

double report_tail(const AnalyticFunction& f, const BesovParams& bp, double delta) {
  double tail = kInf;
  const auto deg = f.blaschke_degree();
  const auto m1 = f.derivative_bound();
  if (!bp.q.is_infinite()) {
    const double q = bp.q.value();
    if (deg && !bp.p.is_infinite() && delta <= 0.5) tail = tail_bound(*deg, bp, delta);
    // ||f'||_p <= M1 everywhere
    if (m1) tail = std::min(tail, std::pow(*m1 * delta, q) / q);
  } else {
    if (deg && !bp.p.is_infinite()) {
      const double p = bp.p.value();
      tail = std::pow(static_cast<double>(*deg) * delta, 1.0 / p);
    }
    if (m1) tail = std::min(tail, *m1 * delta);
  }
  return tail;
}

}  // namespace

std::vector<RadialNode> radial_nodes(double cutoff, int order, bool with_endpoints) {
  check_order(order);
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw std::invalid_argument("radial cutoff must lie in (0, 1)");
  const GaussRule fine = gauss_legendre(order);
  const GaussRule coarse = gauss_legendre(order / 2);
  std::vector<RadialNode> nodes;
  auto add_rule = [&](const GaussRule& rule, double a, double b, RadialNode::Kind kind) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back({mid + half * rule.nodes[i], half * rule.weights[i], kind});
    }
  };
  for (int j = 0;; ++j) {
    const double b = std::ldexp(1.0, -j);
    if (!(b > cutoff)) break;
    const double a = std::max(std::ldexp(1.0, -j - 1), cutoff);
    add_rule(fine, a, b, RadialNode::Kind::Fine);
    add_rule(coarse, a, b, RadialNode::Kind::Coarse);
    if (with_endpoints) nodes.push_back({b, 0.0, RadialNode::Kind::Endpoint});
  }
  if (with_endpoints) nodes.push_back({cutoff, 0.0, RadialNode::Kind::Endpoint});
  return nodes;
}

double default_cutoff(const AnalyticFunction& f) {
  double delta = 1e-6;
  if (const auto deg = f.degree_hint(); deg && *deg > 0) {
    const double n = static_cast<double>(*deg);
    delta = std::min(delta, 1.0 / (4.0 * n * n));
  }
  const double log_r = f.log_singularity_radius();
  if (std::isfinite(log_r) && log_r > 0.0) delta = std::min(delta, std::expm1(log_r) / 64.0);
  return delta;
}

double tail_bound(std::size_t N, BesovParams params, double delta) {
  if (params.q.is_infinite()) throw std::invalid_argument("tail_bound needs q < inf");
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("tail_bound needs 0 < delta <= 1/2");
  if (N == 0) throw std::invalid_argument("tail_bound needs N >= 1");
  if (params.p.is_infinite()) return kInf;
  const double p = params.p.value();
  const double q = params.q.value();
  return std::pow(static_cast<double>(N) * delta, q / p) * (p / q);
}

double predicted_work(const AnalyticFunction& f, std::span<const BesovParams> params, const BesovQuadrature& quad) {
  if (params.empty()) return 0.0;
  const double delta = resolve_cutoff(f, quad.radial);
  const std::vector<Exponent> ps = distinct_p(params);
  double work = 0.0;
  for (const RadialNode& node : radial_nodes(delta, quad.radial.order, any_sup(params))) {
    work += static_cast<double>(angular_samples(f, node.s, ps, quad.angular));
  }
  return work * f.evaluation_cost();
}

std::vector<NormReport> besov_seminorms(const FunctionHandle& handle, std::span<const BesovParams> params,
                                        const BesovQuadrature& quad) {
  if (params.empty()) throw std::invalid_argument("besov_seminorms: no exponent pairs");
  const AnalyticFunction& f = handle.function();
  const double delta = resolve_cutoff(f, quad.radial);
  const std::vector<Exponent> ps = distinct_p(params);
  const std::vector<RadialNode> nodes = radial_nodes(delta, quad.radial.order, any_sup(params));
  const std::size_t P = ps.size();

  AngularPolicy uncapped = quad.angular;
  uncapped.max_samples = std::numeric_limits<std::size_t>::max();
  uncapped.max_samples_sup = std::numeric_limits<std::size_t>::max();

  std::vector<double> norms(nodes.size() * P);
  std::vector<std::size_t> samples(nodes.size());
  std::vector<char> capped(nodes.size(), 0);
  parallel_for(nodes.size(), resolve_workers(quad.workers), [&](std::size_t i) {
    const double s = nodes[i].s;
    const std::size_t m = angular_samples(f, s, ps, quad.angular);
    capped[i] = m < angular_samples(f, s, ps, uncapped) ? 1 : 0;
    samples[i] = m;
    const AngularGrid grid(m);
    const std::vector<double> v = derivative_lp_norms(f, s, ps, grid, capped[i] != 0);
    std::copy(v.begin(), v.end(), norms.begin() + static_cast<std::ptrdiff_t>(i * P));
  });

  std::size_t total_samples = 0;
  std::size_t capped_count = 0;
  std::size_t min_capped = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total_samples += samples[i];
    if (capped[i]) {
      ++capped_count;
      min_capped = std::min(min_capped, samples[i]);
    }
  }

  std::vector<NormReport> reports;
  reports.reserve(params.size());
  for (const BesovParams& bp : params) {
    const std::size_t k = static_cast<std::size_t>(std::find(ps.begin(), ps.end(), bp.p) - ps.begin());
    NormReport r;
    r.cutoff = delta;
    r.nodes_used = nodes.size();
    r.samples = total_samples;
    r.lower_estimate = bp.p.is_infinite() || bp.q.is_infinite();
    if (bp.q.is_infinite()) {
      double fine = 0.0;
      double coarse = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = nodes[i].s * norms[i * P + k];
        if (nodes[i].kind != RadialNode::Kind::Coarse) fine = std::max(fine, v);
        if (nodes[i].kind != RadialNode::Kind::Fine) coarse = std::max(coarse, v);
      }
      r.value = fine;
      r.quad_error_est = std::abs(fine - coarse);
    } else {
      const double q = bp.q.value();
      PairwiseSum fine;
      PairwiseSum coarse;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double term = nodes[i].weight * std::pow(nodes[i].s, q - 1.0) * std::pow(norms[i * P + k], q);
        if (nodes[i].kind == RadialNode::Kind::Fine) fine.add(term);
        if (nodes[i].kind == RadialNode::Kind::Coarse) coarse.add(term);
      }
      r.value = std::pow(fine.total(), 1.0 / q);
      r.quad_error_est = std::abs(r.value - std::pow(coarse.total(), 1.0 / q));
    }
    r.tail_bound = report_tail(f, bp, delta);
    if (capped_count > 0) {
      r.warnings.push_back("angular sample cap reached on " + std::to_string(capped_count) + " of " +
                           std::to_string(nodes.size()) + " circles (smallest M = " + std::to_string(min_capped) +
                           ")");
      if (auto w = coarse_grid_warning(f, min_capped, quad.angular.oversample)) r.warnings.push_back(*w);
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

NormReport besov_seminorm(const FunctionHandle& f, BesovParams params, const BesovQuadrature& quad) {
  return besov_seminorms(f, std::span<const BesovParams>(&params, 1), quad)[0];
}

std::vector<NormReport> besov_norms(const FunctionHandle& f, std::span<const BesovParams> params,
                                    const BesovQuadrature& quad) {
  std::vector<NormReport> reports = besov_seminorms(f, params, quad);
  const double at_zero = std::abs(f.eval(Complex(0.0, 0.0)));
  for (NormReport& r : reports) r.value += at_zero;
  return reports;
}

NormReport besov_norm(const FunctionHandle& f, BesovParams params, const BesovQuadrature& quad) {
  return besov_norms(f, std::span<const BesovParams>(&params, 1), quad)[0];
}

NormReport bloch_seminorm(const FunctionHandle& f, const BesovQuadrature& quad) {
  return besov_seminorm(f, BesovParams{Exponent::infinity(), Exponent::infinity()}, quad);
}

}  // namespace besovcap
