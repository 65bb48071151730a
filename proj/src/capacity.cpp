#include "besovcap/capacity.hpp"

#include <cmath>
#include <stdexcept>

#include "besovcap/blaschke.hpp"

namespace besovcap {

namespace {

void check_punctured(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("point is not finite");
  if (z == Complex(0.0, 0.0)) throw DomainError("capacity needs nonzero points");
  if (!(std::abs(z) < 1.0)) throw DomainError("point outside the open disk");
}

}  // namespace

double prod_moduli(std::span<const Complex> zeros) {
  if (zeros.empty()) throw DomainError("empty point set");
  double log_prod = 0.0;
  for (const Complex& z : zeros) {
    check_punctured(z);
    log_prod += std::log(std::abs(z));
  }
  return std::exp(log_prod);
}

double prod_moduli(std::span<const DiskPoint> zeros) {
  if (zeros.empty()) throw DomainError("empty point set");
  double log_prod = 0.0;
  for (const DiskPoint& p : zeros) {
    if (!(p.co_radius > 0.0 && p.co_radius < 1.0)) throw DomainError("point outside the punctured open disk");
    log_prod += std::log1p(-p.co_radius);
  }
  return std::exp(log_prod);
}

double cap_hinfty(std::span<const Complex> zeros) { return 1.0 / prod_moduli(zeros); }
double cap_hinfty(std::span<const DiskPoint> zeros) { return 1.0 / prod_moduli(zeros); }
double cap_h2(std::span<const Complex> zeros) { return 1.0 / prod_moduli(zeros); }

Exponent conjugate_exponent(Exponent p) { return conjugate(p); }

BesovParams dual_params(BesovParams params) { return {conjugate(params.p), conjugate(params.q)}; }

std::vector<CapacityEstimate> upper_bound_blaschke(const FunctionHandle& blaschke, double prod,
                                                   std::span<const BesovParams> params,
                                                   const BesovQuadrature& quad) {
  if (!(prod > 0.0 && prod < 1.0)) throw DomainError("prod |l| must lie in (0, 1)");
  std::vector<CapacityEstimate> out;
  for (NormReport& r : besov_norms(blaschke, params, quad)) {
    const double v = r.value / prod;
    out.push_back({v, std::move(r)});
  }
  return out;
}

CapacityEstimate upper_bound_blaschke(std::span<const Complex> zeros, BesovParams params,
                                      const BesovQuadrature& quad) {
  const double prod = prod_moduli(zeros);
  return upper_bound_blaschke(blaschke_handle(BlaschkeProduct(zeros)), prod,
                              std::span<const BesovParams>(&params, 1), quad)[0];
}

CapacityEstimate upper_bound_dilated(const FunctionHandle& dilated, Exponent q, const BesovQuadrature& quad) {
  if (q.is_infinite()) throw std::invalid_argument("upper_bound_dilated needs q < inf");
  NormReport r = besov_norm(dilated, {Exponent::infinity(), q}, quad);
  const double v = r.value;
  return {v, std::move(r)};
}

CapacityEstimate upper_bound_dilated(std::span<const Complex> zeros, Exponent q, const BesovQuadrature& quad) {
  prod_moduli(zeros);
  return upper_bound_dilated(dilated_test_function(zeros), q, quad);
}

std::vector<CapacityEstimate> duality_lower_ratio(const FunctionHandle& blaschke, double prod,
                                                  std::span<const BesovParams> params,
                                                  const BesovQuadrature& quad) {
  if (!(prod > 0.0 && prod < 1.0)) throw DomainError("prod |l| must lie in (0, 1)");
  std::vector<BesovParams> duals;
  for (const BesovParams& bp : params) duals.push_back(dual_params(bp));
  std::vector<CapacityEstimate> out;
  for (NormReport& r : besov_seminorms(blaschke, duals, quad)) {
    const double v = (1.0 - prod * prod) / r.value;
    out.push_back({v, std::move(r)});
  }
  return out;
}

CapacityEstimate duality_lower_ratio(std::span<const Complex> zeros, BesovParams params,
                                     const BesovQuadrature& quad) {
  const double prod = prod_moduli(zeros);
  return duality_lower_ratio(blaschke_handle(BlaschkeProduct(zeros)), prod, std::span<const BesovParams>(&params, 1),
                             quad)[0];
}

std::string to_string(CapacityBoundReport::TestFunction tag) {
  return tag == CapacityBoundReport::TestFunction::Blaschke ? "blaschke" : "dilated";
}

CapacityBoundReport capacity_bounds(std::span<const Complex> zeros, BesovParams params,
                                    const BesovQuadrature& quad) {
  CapacityBoundReport rep;
  rep.prod_moduli = prod_moduli(zeros);
  rep.dual = dual_params(params);
  const auto blaschke = blaschke_handle(BlaschkeProduct(zeros));
  CapacityEstimate up = upper_bound_blaschke(blaschke, rep.prod_moduli, std::span<const BesovParams>(&params, 1), quad)[0];
  rep.upper = up.value;
  rep.upper_norm = std::move(up.norm);
  if (params.p.is_infinite() && !params.q.is_infinite()) {
    CapacityEstimate dil = upper_bound_dilated(zeros, params.q, quad);
    if (dil.value < rep.upper) {
      rep.upper = dil.value;
      rep.upper_norm = std::move(dil.norm);
      rep.test_function = CapacityBoundReport::TestFunction::Dilated;
    }
  }
  CapacityEstimate low = duality_lower_ratio(blaschke, rep.prod_moduli, std::span<const BesovParams>(&params, 1), quad)[0];
  rep.lower_ratio = low.value;
  rep.lower_norm = std::move(low.norm);
  return rep;
}

}  // namespace besovcap
