#include "besovcap/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "besovcap/capacity.hpp"
#include "besovcap/sigma_star.hpp"
#include "besovcap/wiener_lp.hpp"

namespace besovcap {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(sep, start), s.size());
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ConfigError("bad value for " + key + ": '" + text + "'");
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ConfigError("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad value for " + key + ": '" + text + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("bad value for " + key + ": '" + text + "'");
}

BesovParams parse_pair(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("pair must look like p:q, got '" + text + "'");
  try {
    return {Exponent::parse(parts[0]), Exponent::parse(parts[1])};
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad pair '" + text + "': " + e.what());
  }
}

std::string pair_string(const BesovParams& bp) { return bp.p.to_string() + ":" + bp.q.to_string(); }

bool same(const BesovParams& a, const BesovParams& b) { return a.p == b.p && a.q == b.q; }

std::size_t index_of(std::vector<BesovParams>& list, const BesovParams& bp) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (same(list[i], bp)) return i;
  }
  list.push_back(bp);
  return list.size() - 1;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

double log_n(std::size_t N) {
  if (N < 2) throw std::invalid_argument("growth laws need N >= 2");
  return std::log(static_cast<double>(N));
}

double loglog_n(std::size_t N) {
  const double L = log_n(N);
  if (!(L > 1.0)) throw std::invalid_argument("loglog N needs N >= 3");
  return std::log(L);
}

double inv(Exponent p) { return p.is_infinite() ? 0.0 : 1.0 / p.value(); }

SweepRow make_row(std::string experiment, int n, std::size_t N, std::optional<BesovParams> params, double value,
                  double normalizer, const NormReport* report) {
  SweepRow r;
  r.experiment = std::move(experiment);
  r.n = n;
  r.N = N;
  r.params = params;
  r.value = value;
  r.normalizer = normalizer;
  r.ratio = value / normalizer;
  if (report) {
    r.tail_bound = report->tail_bound;
    r.quad_err = report->quad_error_est;
  }
  return r;
}

double split_work(const FunctionHandle& f, const std::vector<BesovParams>& params, const BesovQuadrature& quad);

// Work items of a sweep, checked against the budget before anything runs.
struct Job {
  FunctionHandle f;
  std::vector<BesovParams> params;
};

void guard(const std::vector<Job>& jobs, const SweepConfig& cfg) {
  double work = 0.0;
  for (const Job& j : jobs) work += split_work(j.f, j.params, cfg.quad);
  if (work > cfg.budget) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "predicted work %.3g factor evaluations exceeds the budget %.3g", work, cfg.budget);
    throw CostGuardError(buf, work, cfg.budget);
  }
}

void check_n_range(const SweepConfig& cfg, int lo, int hi) {
  if (cfg.n_min > cfg.n_max) throw ConfigError("n_min > n_max");
  if (cfg.n_min < lo || cfg.n_max > hi) {
    throw ConfigError("n range must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Sup-only exponents sample far fewer points than finite ones, so the two
// groups get separate passes over the same radial nodes.
std::vector<NormReport> evaluate(const FunctionHandle& f, const std::vector<BesovParams>& params,
                                 const BesovQuadrature& quad, bool with_value_at_zero) {
  std::vector<BesovParams> sup;
  std::vector<BesovParams> fin;
  for (const BesovParams& bp : params) (bp.p.is_infinite() ? sup : fin).push_back(bp);
  const auto run = [&](const std::vector<BesovParams>& ps) {
    if (ps.empty()) return std::vector<NormReport>{};
    return with_value_at_zero ? besov_norms(f, ps, quad) : besov_seminorms(f, ps, quad);
  };
  const std::vector<NormReport> a = run(sup);
  const std::vector<NormReport> b = run(fin);
  std::vector<NormReport> out;
  std::size_t i = 0;
  std::size_t j = 0;
  for (const BesovParams& bp : params) out.push_back(bp.p.is_infinite() ? a[i++] : b[j++]);
  return out;
}

double split_work(const FunctionHandle& f, const std::vector<BesovParams>& params, const BesovQuadrature& quad) {
  std::vector<BesovParams> sup;
  std::vector<BesovParams> fin;
  for (const BesovParams& bp : params) (bp.p.is_infinite() ? sup : fin).push_back(bp);
  double w = 0.0;
  if (!sup.empty()) w += predicted_work(f.function(), sup, quad);
  if (!fin.empty()) w += predicted_work(f.function(), fin, quad);
  return w;
}

void collect_warnings(SweepResult& out, const std::string& label, const NormReport& r) {
  for (const std::string& w : r.warnings) out.summary.push_back(label + ": " + w);
}

std::vector<DiskPoint> to_disk(std::span<const Complex> zs) {
  std::vector<DiskPoint> out;
  for (const Complex& z : zs) out.push_back(DiskPoint::from_complex(z));
  return out;
}

std::vector<Complex> to_complex_checked(const std::vector<DiskPoint>& pts) {
  std::vector<Complex> out;
  for (const DiskPoint& p : pts) {
    const Complex z = p.to_complex();
    if (!(std::abs(z) < 1.0)) throw DomainError("point too close to the circle for this computation");
    out.push_back(z);
  }
  return out;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    kv[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_override(KeyValues& kv, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override must be key=value: '" + std::string(assignment) + "'");
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("override has an empty key");
  kv[key] = trim(assignment.substr(eq + 1));
}

SweepConfig SweepConfig::from_key_values(const KeyValues& kv) {
  SweepConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "experiment") {
      if (value.empty() || value.find_first_of("/\\, ") != std::string::npos) throw ConfigError("bad experiment id");
      c.experiment = value;
    } else if (key == "n_min") {
      c.n_min = parse_number<int>(key, value);
    } else if (key == "n_max") {
      c.n_max = parse_number<int>(key, value);
    } else if (key == "N") {
      c.N_values.clear();
      for (const auto& s : split(value, ',')) c.N_values.push_back(parse_number<std::size_t>(key, s));
    } else if (key == "pairs") {
      c.pairs.clear();
      for (const auto& s : split(value, ',')) c.pairs.push_back(parse_pair(s));
    } else if (key == "quantities") {
      c.quantities = split(value, ',');
      for (const auto& q : c.quantities) {
        if (q != "seminorm" && q != "lower" && q != "upper" && q != "norm") {
          throw ConfigError("unknown quantity '" + q + "'");
        }
      }
    } else if (key == "families") {
      c.families = split(value, ',');
      for (const auto& f : c.families) {
        if (f != "sigma_star" && f != "random" && f != "interp" && f != "monomial") {
          throw ConfigError("unknown family '" + f + "'");
        }
      }
    } else if (key == "norms") {
      c.norms.clear();
      for (const auto& s : split(value, ',')) {
        try {
          c.norms.push_back(parse_norm_kind(s));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
      }
    } else if (key == "points") {
      c.points = value;
    } else if (key == "cutoff") {
      c.quad.radial.cutoff = parse_real(key, value);
    } else if (key == "order") {
      c.quad.radial.order = parse_number<int>(key, value);
    } else if (key == "oversample") {
      c.quad.angular.oversample = parse_number<int>(key, value);
    } else if (key == "conservative") {
      c.quad.angular.conservative = parse_bool(key, value);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "workers") {
      c.quad.workers = parse_number<unsigned>(key, value);
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "svg") {
      c.svg = parse_bool(key, value);
    } else if (key == "budget") {
      c.budget = parse_real(key, value);
    } else if (key == "wiener_tol") {
      c.wiener_tol = parse_real(key, value);
    } else if (key == "degree_factor") {
      c.degree_factor = parse_number<std::size_t>(key, value);
    } else if (key == "degree") {
      c.degree = parse_number<std::size_t>(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (c.N_values.empty()) throw ConfigError("N list is empty");
  if (c.pairs.empty()) throw ConfigError("pairs list is empty");
  if (c.quantities.empty()) throw ConfigError("quantities list is empty");
  if (c.families.empty()) throw ConfigError("families list is empty");
  if (c.norms.empty()) throw ConfigError("norms list is empty");
  if (c.quad.radial.cutoff < 0.0 || c.quad.radial.cutoff > 0.5) throw ConfigError("cutoff must lie in [0, 1/2]");
  if (c.quad.radial.order < 2 || c.quad.radial.order % 2 != 0) throw ConfigError("order must be even and >= 2");
  if (c.quad.angular.oversample < 1) throw ConfigError("oversample must be positive");
  if (!(c.budget > 0.0)) throw ConfigError("budget must be positive");
  if (!(c.wiener_tol > 0.0)) throw ConfigError("wiener_tol must be positive");
  if (c.degree_factor < 1) throw ConfigError("degree_factor must be positive");
  return c;
}

std::string SweepConfig::canonical() const {
  std::ostringstream o;
  o << "experiment=" << experiment << "\n";
  o << "n=" << n_min << ".." << n_max << "\n";
  o << "N=";
  for (std::size_t i = 0; i < N_values.size(); ++i) o << (i ? "," : "") << N_values[i];
  o << "\npairs=";
  for (std::size_t i = 0; i < pairs.size(); ++i) o << (i ? "," : "") << pair_string(pairs[i]);
  o << "\nquantities=";
  for (std::size_t i = 0; i < quantities.size(); ++i) o << (i ? "," : "") << quantities[i];
  o << "\nfamilies=";
  for (std::size_t i = 0; i < families.size(); ++i) o << (i ? "," : "") << families[i];
  o << "\nnorms=";
  for (std::size_t i = 0; i < norms.size(); ++i) o << (i ? "," : "") << to_string(norms[i]);
  o << "\npoints=" << points << "\n";
  o << "cutoff=" << format_double(quad.radial.cutoff) << "\norder=" << quad.radial.order << "\n";
  o << "oversample=" << quad.angular.oversample << "\nconservative=" << quad.angular.conservative << "\n";
  o << "seed=" << seed << "\nbudget=" << format_double(budget) << "\n";
  o << "wiener_tol=" << format_double(wiener_tol) << "\ndegree_factor=" << degree_factor << "\ndegree=" << degree
    << "\n";
  return o.str();
}

std::uint64_t SweepConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : canonical()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

double seminorm_law(BesovParams bp, std::size_t N) {
  const double L = log_n(N);
  const double ip = inv(bp.p);
  const double iq = inv(bp.q);
  if (bp.p.value() == 1.0) return loglog_n(N) / std::pow(L, 1.0 - iq);
  if (bp.p.value() <= bp.q.value()) return std::pow(L, -(ip - iq));
  return 1.0;
}

double region_law(BesovParams bp, std::size_t N) {
  const double L = log_n(N);
  const double p = bp.p.value();
  const double q = bp.q.value();
  const double ip = inv(bp.p);
  const double iq = inv(bp.q);
  if (p <= 2.0 && q <= 2.0) return std::pow(L, iq - 0.5);
  if (p <= q) return 1.0;
  return std::pow(L, iq - ip);
}

double blaschke_norm_law(BesovParams bp, std::size_t N) {
  if (bp.p.is_infinite() && !bp.q.is_infinite()) return std::pow(static_cast<double>(N), inv(bp.q));
  return region_law(bp, N);
}

double wiener_law(std::size_t N) { return log_n(N) / loglog_n(N); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform_draw(std::uint64_t seed, std::uint64_t N, std::uint64_t index) {
  const std::uint64_t x = splitmix64(splitmix64(splitmix64(seed) ^ N) ^ index);
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::vector<DiskPoint> random_circle_points(std::uint64_t seed, std::size_t N) {
  if (N < 2) throw std::invalid_argument("random family needs N >= 2");
  std::vector<DiskPoint> out;
  out.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double t = 2.0 * kPi * uniform_draw(seed, N, i) - kPi;
    out.push_back(DiskPoint::polar(1.0 / static_cast<double>(N), t));
  }
  return out;
}

Complex parse_complex(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty complex number");
  const auto real_of = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real("complex", part);
  };
  if (s.back() != 'i') return Complex(parse_real("complex", s), 0.0);
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not an exponent sign or the leading sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) return Complex(0.0, real_of(body));
  return Complex(parse_real("complex", body.substr(0, cut)), real_of(body.substr(cut)));
}

PointSet parse_points(std::string_view spec, std::uint64_t seed) {
  const std::string s = trim(spec);
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("points must look like family:argument, got '" + s + "'");
  const std::string family = s.substr(0, colon);
  const std::string arg = trim(std::string_view(s).substr(colon + 1));
  if (family == "sigma_star") {
    const int n = parse_number<int>("points", arg);
    const SigmaStarSpec st = SigmaStarSpec::make(n);
    return PointSet{family, n, sigma_star_disk_points(n), sigma_star_handle(st), st.prod_moduli()};
  }
  if (family == "interp") {
    auto pts = interp_sequence(parse_number<std::size_t>("points", arg));
    BlaschkeProduct b{std::span<const DiskPoint>(pts)};
    const double prod = b.prod_moduli();
    return PointSet{family, 0, std::move(pts), blaschke_handle(std::move(b)), prod};
  }
  if (family == "random") {
    auto pts = random_circle_points(seed, parse_number<std::size_t>("points", arg));
    BlaschkeProduct b{std::span<const DiskPoint>(pts)};
    const double prod = b.prod_moduli();
    return PointSet{family, 0, std::move(pts), blaschke_handle(std::move(b)), prod};
  }
  if (family == "monomial") {
    const std::size_t N = parse_number<std::size_t>("points", arg);
    if (N < 1) throw ConfigError("monomial degree must be positive");
    return PointSet{family, 0, std::vector<DiskPoint>(N, DiskPoint::polar(1.0, 0.0)), monomial_handle(N), 0.0};
  }
  if (family == "zeros") {
    std::vector<Complex> zs;
    for (const auto& item : split(arg, ';')) zs.push_back(parse_complex(item));
    if (zs.empty()) throw ConfigError("zeros list is empty");
    const double prod = prod_moduli(zs);
    return PointSet{family, 0, to_disk(zs), blaschke_handle(BlaschkeProduct(zs)), prod};
  }
  throw ConfigError("unknown point family '" + family + "'");
}

SweepResult run_sigma_star_sweep(const SweepConfig& cfg) {
  check_n_range(cfg, 2, 16);
  const bool want_semi = contains(cfg.quantities, "seminorm");
  const bool want_lower = contains(cfg.quantities, "lower");
  const bool want_upper = contains(cfg.quantities, "upper");

  // Exponent pairs evaluated per n, shared in one radial pass.
  std::vector<BesovParams> evals;
  std::vector<std::size_t> semi_idx;
  std::vector<std::size_t> dual_idx;
  for (const BesovParams& bp : cfg.pairs) {
    semi_idx.push_back(index_of(evals, bp));
    dual_idx.push_back(want_upper ? index_of(evals, dual_params(bp)) : 0);
  }
  std::vector<Exponent> dilated_q;
  if (want_upper) {
    for (const BesovParams& bp : cfg.pairs) {
      const BesovParams d = dual_params(bp);
      if (d.p.is_infinite() && !d.q.is_infinite() &&
          std::find(dilated_q.begin(), dilated_q.end(), d.q) == dilated_q.end()) {
        dilated_q.push_back(d.q);
      }
    }
  }

  std::vector<Job> jobs;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const SigmaStarSpec spec = SigmaStarSpec::make(n);
    jobs.push_back({sigma_star_handle(spec), evals});
    if (!dilated_q.empty()) {
      std::vector<BesovParams> dp;
      for (const Exponent& q : dilated_q) dp.push_back({Exponent::infinity(), q});
      jobs.push_back({dilated_sigma_star(spec), dp});
    }
  }
  guard(jobs, cfg);

  SweepResult out;
  double c_run = 0.0;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const SigmaStarSpec spec = SigmaStarSpec::make(n);
    const FunctionHandle f = sigma_star_handle(spec);
    const double P = spec.prod_moduli();
    const std::vector<NormReport> reps = evaluate(f, evals, cfg.quad, false);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      collect_warnings(out, "n=" + std::to_string(n) + " " + pair_string(evals[i]), reps[i]);
    }
    std::vector<NormReport> dil;
    if (!dilated_q.empty()) {
      std::vector<BesovParams> dp;
      for (const Exponent& q : dilated_q) dp.push_back({Exponent::infinity(), q});
      dil = besov_norms(dilated_sigma_star(spec), dp, cfg.quad);
    }
    for (std::size_t k = 0; k < cfg.pairs.size(); ++k) {
      const BesovParams bp = cfg.pairs[k];
      const BesovParams dual = dual_params(bp);
      const NormReport& semi = reps[semi_idx[k]];
      const double lower = (1.0 - P * P) / semi.value;
      if (want_semi) {
        out.rows.push_back(
            make_row("sigma_star.seminorm", n, spec.N, bp, semi.value, seminorm_law(bp, spec.N), &semi));
      }
      if (want_lower) {
        out.rows.push_back(
            make_row("sigma_star.lower", n, spec.N, dual, lower, 1.0 / seminorm_law(bp, spec.N), &semi));
      }
      if (want_upper) {
        const NormReport& up = reps[dual_idx[k]];
        double upper = P + up.value;  // prod|l| * ||B / B(0)||
        const NormReport* used = &up;
        if (dual.p.is_infinite() && !dual.q.is_infinite()) {
          const std::size_t j =
              static_cast<std::size_t>(std::find(dilated_q.begin(), dilated_q.end(), dual.q) - dilated_q.begin());
          if (P * dil[j].value < upper) {
            upper = P * dil[j].value;
            used = &dil[j];
          }
        }
        out.rows.push_back(make_row("sigma_star.upper", n, spec.N, dual, upper, region_law(dual, spec.N), used));
        c_run = std::max(c_run, lower / upper);
      }
    }
  }
  if (want_upper) out.summary.insert(out.summary.begin(), "C_run = " + format_double(c_run));
  return out;
}

SweepResult run_region_table(const SweepConfig& cfg) {
  const bool has_sigma = contains(cfg.families, "sigma_star");
  if (has_sigma) check_n_range(cfg, 2, 16);
  for (const std::size_t N : cfg.N_values) {
    if (N < 3) throw ConfigError("region table needs N >= 3");
  }

  struct Item {
    std::string family;
    int n;
    std::size_t N;
    FunctionHandle f;
    double prod;
    std::optional<FunctionHandle> dilated;
  };
  const bool want_norm = contains(cfg.quantities, "norm");
  const bool want_lower = contains(cfg.quantities, "lower");
  const bool want_upper = contains(cfg.quantities, "upper");
  bool need_dilated = false;
  if (want_upper) {
    for (const BesovParams& bp : cfg.pairs) need_dilated = need_dilated || (bp.p.is_infinite() && !bp.q.is_infinite());
  }

  std::vector<Item> items;
  for (const std::string& fam : cfg.families) {
    if (fam == "sigma_star") {
      for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        const SigmaStarSpec spec = SigmaStarSpec::make(n);
        items.push_back({fam, n, spec.N, sigma_star_handle(spec), spec.prod_moduli(),
                         need_dilated ? std::optional(dilated_sigma_star(spec)) : std::nullopt});
      }
      continue;
    }
    for (const std::size_t N : cfg.N_values) {
      if (fam == "monomial") {
        items.push_back({fam, 0, N, monomial_handle(N), 0.0, std::nullopt});
        continue;
      }
      std::vector<DiskPoint> pts = fam == "random" ? random_circle_points(cfg.seed, N) : interp_sequence(N);
      BlaschkeProduct b{std::span<const DiskPoint>(pts)};
      const double prod = b.prod_moduli();
      std::optional<FunctionHandle> dil;
      if (need_dilated) dil = dilated_test_function(std::span<const DiskPoint>(pts));
      items.push_back({fam, 0, N, blaschke_handle(std::move(b)), prod, dil});
    }
  }

  std::vector<BesovParams> evals;
  std::vector<std::size_t> pair_idx;
  std::vector<std::size_t> dual_idx;
  for (const BesovParams& bp : cfg.pairs) pair_idx.push_back(index_of(evals, bp));
  for (const BesovParams& bp : cfg.pairs) dual_idx.push_back(want_lower ? index_of(evals, dual_params(bp)) : 0);
  std::vector<BesovParams> dil_params;
  for (const BesovParams& bp : cfg.pairs) {
    if (need_dilated && bp.p.is_infinite() && !bp.q.is_infinite()) index_of(dil_params, bp);
  }

  std::vector<Job> jobs;
  for (const Item& it : items) {
    jobs.push_back({it.f, evals});
    if (it.dilated && !dil_params.empty()) jobs.push_back({*it.dilated, dil_params});
  }
  guard(jobs, cfg);

  SweepResult out;
  for (const Item& it : items) {
    const std::vector<NormReport> reps = evaluate(it.f, evals, cfg.quad, true);
    const std::string label = it.family + " N=" + std::to_string(it.N);
    for (const NormReport& r : reps) collect_warnings(out, label, r);
    std::vector<NormReport> dil;
    if (it.dilated && !dil_params.empty()) dil = besov_norms(*it.dilated, dil_params, cfg.quad);
    const std::string prefix = "region." + it.family + ".";
    for (std::size_t k = 0; k < cfg.pairs.size(); ++k) {
      const BesovParams bp = cfg.pairs[k];
      const NormReport& norm = reps[pair_idx[k]];
      if (it.family == "monomial") {
        // prod|l| = 0: prod|l| * ||B / B(0)|| degenerates to ||z^N||
        if (want_norm || want_upper) {
          out.rows.push_back(make_row(prefix + "norm", 0, it.N, bp, norm.value, blaschke_norm_law(bp, it.N), &norm));
        }
        continue;
      }
      if (want_norm) {
        out.rows.push_back(make_row(prefix + "norm", it.n, it.N, bp, norm.value, blaschke_norm_law(bp, it.N), &norm));
      }
      if (want_upper) {
          double upper = norm.value;  // prod|l| * ||B / B(0)||
        const NormReport* used = &norm;
        if (!dil.empty() && bp.p.is_infinite() && !bp.q.is_infinite()) {
          const std::size_t j = index_of(dil_params, bp);
          if (it.prod * dil[j].value < upper) {
            upper = it.prod * dil[j].value;
            used = &dil[j];
          }
        }
        out.rows.push_back(make_row(prefix + "upper", it.n, it.N, bp, upper, region_law(bp, it.N), used));
      }
      if (want_lower) {
        const BesovParams dual = dual_params(bp);
        const NormReport& dn = reps[dual_idx[k]];
        const double semi = dn.value - std::abs(it.f.eval(Complex(0.0, 0.0)));
        const double lower = (1.0 - it.prod * it.prod) / semi;
        const double law =
            it.family == "sigma_star" ? 1.0 / seminorm_law(dual, it.N) : 1.0 / blaschke_norm_law(dual, it.N);
        out.rows.push_back(make_row(prefix + "lower", it.n, it.N, bp, lower, law, &dn));
      }
    }
  }
  return out;
}

SweepResult run_wiener_schaffer(const SweepConfig& cfg) {
  check_n_range(cfg, 2, 5);
  SweepResult out;
  WienerOptions opt;
  opt.tol = cfg.wiener_tol;
  const auto add_schaffer = [&](const std::string& family, int n, const std::vector<Complex>& pts) {
    try {
      const DenseMatrix t = companion(pts);
      for (const OperatorNormKind kind : cfg.norms) {
        const double r = schaffer_ratio(t, kind);
        out.rows.push_back(make_row("schaffer." + family + "." + to_string(kind), n, pts.size(), std::nullopt, r,
                                    schaffer_bound(pts.size()), nullptr));
      }
    } catch (const SingularMatrixError& e) {
      ++out.failures;
      out.summary.push_back("schaffer " + family + " N=" + std::to_string(pts.size()) + ": " + e.what());
    }
  };
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const std::vector<Complex> pts = sigma_star_points(n);
    const std::size_t N = pts.size();
    const double P = SigmaStarSpec::make(n).prod_moduli();
    const std::size_t D = cfg.degree ? cfg.degree : cfg.degree_factor * N;
    const WienerResult res = solve_wiener(pts, D, opt);
    const double law = wiener_law(N);
    const double gap = res.lower ? res.primal - *res.lower : std::numeric_limits<double>::infinity();
    SweepRow primal = make_row("wiener.primal", n, N, std::nullopt, P * res.primal, law, nullptr);
    primal.quad_err = P * gap;
    out.rows.push_back(primal);
    if (!res.converged) {
      out.summary.push_back("wiener n=" + std::to_string(n) + ": solver stopped at the iteration limit, relative gap " +
                            format_double(res.relative_gap));
    }
    if (res.lower) {
      SweepRow lo = make_row("wiener.lower", n, N, std::nullopt, P * *res.lower, law, nullptr);
      lo.quad_err = P * gap;
      out.rows.push_back(lo);
      SweepRow ex = make_row("wiener.excess", n, N, std::nullopt, P * (*res.lower - 1.0), law, nullptr);
      ex.quad_err = P * gap;
      out.rows.push_back(ex);
    } else {
      ++out.failures;
      out.summary.push_back("wiener n=" + std::to_string(n) + ": dual certificate did not close");
    }
    add_schaffer("sigma_star", n, pts);
  }
  if (contains(cfg.families, "random")) {
    for (const std::size_t N : cfg.N_values) {
      if (N > 256) {
        out.summary.push_back("schaffer random N=" + std::to_string(N) + ": skipped, N > 256");
        continue;
      }
      add_schaffer("random", 0, to_complex_checked(random_circle_points(cfg.seed, N)));
    }
  }
  return out;
}

SweepResult run_besov_norm(const SweepConfig& cfg) {
  if (cfg.points.empty()) throw ConfigError("besov-norm needs points");
  const PointSet ps = parse_points(cfg.points, cfg.seed);
  guard({{ps.handle, cfg.pairs}}, cfg);
  const std::vector<NormReport> reps = evaluate(ps.handle, cfg.pairs, cfg.quad, true);
  SweepResult out;
  for (std::size_t k = 0; k < cfg.pairs.size(); ++k) {
    collect_warnings(out, pair_string(cfg.pairs[k]), reps[k]);
    out.rows.push_back(make_row("besov_norm." + ps.family, ps.n, ps.points.size(), cfg.pairs[k], reps[k].value,
                                blaschke_norm_law(cfg.pairs[k], std::max<std::size_t>(ps.points.size(), 2)),
                                &reps[k]));
  }
  return out;
}

SweepResult run_capacity_bounds(const SweepConfig& cfg) {
  if (cfg.points.empty()) throw ConfigError("capacity-bounds needs points");
  const PointSet ps = parse_points(cfg.points, cfg.seed);
  if (ps.family == "monomial") throw ConfigError("capacity bounds need nonzero points");
  const std::size_t N = ps.points.size();
  const std::size_t Nl = std::max<std::size_t>(N, 2);
  std::vector<BesovParams> evals;
  std::vector<std::size_t> pair_idx;
  std::vector<std::size_t> dual_idx;
  for (const BesovParams& bp : cfg.pairs) pair_idx.push_back(index_of(evals, bp));
  for (const BesovParams& bp : cfg.pairs) dual_idx.push_back(index_of(evals, dual_params(bp)));
  guard({{ps.handle, evals}}, cfg);
  const std::vector<NormReport> reps = evaluate(ps.handle, evals, cfg.quad, false);
  const double P = ps.prod_moduli;
  SweepResult out;
  out.rows.push_back(make_row("capacity.hinfty", ps.n, N, std::nullopt, 1.0 / P, 1.0 / P, nullptr));
  for (std::size_t k = 0; k < cfg.pairs.size(); ++k) {
    const BesovParams bp = cfg.pairs[k];
    const NormReport& up = reps[pair_idx[k]];
    double upper = (P + up.value) / P;
    const NormReport* used = &up;
    NormReport dil_rep;
    if (bp.p.is_infinite() && !bp.q.is_infinite()) {
      const FunctionHandle dil = ps.family == "sigma_star"
                                     ? dilated_sigma_star(SigmaStarSpec::make(ps.n))
                                     : dilated_test_function(std::span<const DiskPoint>(ps.points));
      dil_rep = besov_norm(dil, bp, cfg.quad);
      if (dil_rep.value < upper) {
        upper = dil_rep.value;
        used = &dil_rep;
      }
    }
    collect_warnings(out, pair_string(bp), *used);
    out.rows.push_back(make_row("capacity.upper", ps.n, N, bp, upper, region_law(bp, Nl) / P, used));
    const NormReport& dn = reps[dual_idx[k]];
    const double law = ps.family == "sigma_star" ? 1.0 / seminorm_law(dual_params(bp), Nl)
                                                 : 1.0 / blaschke_norm_law(dual_params(bp), Nl);
    out.rows.push_back(make_row("capacity.lower", ps.n, N, bp, (1.0 - P * P) / dn.value, law, &dn));
  }
  return out;
}

SweepResult run_wiener_cap(const SweepConfig& cfg) {
  if (cfg.points.empty()) throw ConfigError("wiener-cap needs points");
  const PointSet ps = parse_points(cfg.points, cfg.seed);
  if (ps.family == "monomial") throw ConfigError("wiener-cap needs nonzero points");
  const std::vector<Complex> zs = to_complex_checked(ps.points);
  const std::size_t D = cfg.degree ? cfg.degree : cfg.degree_factor * zs.size();
  WienerOptions opt;
  opt.tol = cfg.wiener_tol;
  const WienerResult res = solve_wiener(zs, D, opt);
  const double h = 1.0 / ps.prod_moduli;
  SweepResult out;
  const double gap = res.lower ? res.primal - *res.lower : std::numeric_limits<double>::infinity();
  SweepRow primal = make_row("wiener.primal", ps.n, zs.size(), std::nullopt, res.primal, h, nullptr);
  primal.quad_err = gap;
  out.rows.push_back(primal);
  if (res.lower) {
    SweepRow lo = make_row("wiener.lower", ps.n, zs.size(), std::nullopt, *res.lower, h, nullptr);
    lo.quad_err = gap;
    out.rows.push_back(lo);
  } else {
    ++out.failures;
    out.summary.push_back("dual certificate did not close");
  }
  if (!res.converged) {
    ++out.failures;
    out.summary.push_back("solver stopped at the iteration limit, relative gap " + format_double(res.relative_gap));
  }
  out.summary.push_back("iterations = " + std::to_string(res.iterations) + ", degree = " + std::to_string(D) +
                        (res.real_mode ? ", real mode" : ", complex mode"));
  return out;
}

SweepResult run_schaffer(const SweepConfig& cfg) {
  if (cfg.points.empty()) throw ConfigError("schaffer needs points");
  const PointSet ps = parse_points(cfg.points, cfg.seed);
  if (ps.family == "monomial") throw ConfigError("schaffer needs nonzero points");
  const std::vector<Complex> zs = to_complex_checked(ps.points);
  const DenseMatrix t = companion(zs);
  SweepResult out;
  for (const OperatorNormKind kind : cfg.norms) {
    out.rows.push_back(make_row("schaffer." + to_string(kind), ps.n, zs.size(), std::nullopt, schaffer_ratio(t, kind),
                                schaffer_bound(zs.size()), nullptr));
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "experiment,n,N,p,q,value,normalizer,ratio,tail_bound,quad_err\n";
  for (const SweepRow& r : rows) {
    out += r.experiment;
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.N) + ',';
    if (r.params) out += format_double(r.params->p.value()) + ',' + format_double(r.params->q.value());
    else out += ',';
    out += ',' + format_double(r.value) + ',' + format_double(r.normalizer) + ',' + format_double(r.ratio) + ',' +
           format_double(r.tail_bound) + ',' + format_double(r.quad_err) + '\n';
  }
  return out;
}

std::string to_svg(const std::vector<SweepRow>& rows, const SweepConfig& cfg) {
  constexpr double W = 800.0;
  constexpr double H = 500.0;
  constexpr double L = 70.0;
  constexpr double R = 200.0;
  constexpr double T = 40.0;
  constexpr double B = 50.0;
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> value;
    std::vector<std::pair<double, double>> norm;
  };
  std::vector<Series> series;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const SweepRow& r : rows) {
    if (r.N == 0 || !(r.value > 0.0) || !std::isfinite(r.value) || !(r.normalizer > 0.0)) continue;
    std::string name = r.experiment;
    if (r.params) name += " " + pair_string(*r.params);
    auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
    if (it == series.end()) {
      series.push_back({name, {}, {}});
      it = series.end() - 1;
    }
    const double x = std::log10(static_cast<double>(r.N));
    it->value.emplace_back(x, std::log10(r.value));
    it->norm.emplace_back(x, std::log10(r.normalizer));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min({ymin, std::log10(r.value), std::log10(r.normalizer)});
    ymax = std::max({ymax, std::log10(r.value), std::log10(r.normalizer)});
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash()));
  std::ostringstream o;
  o << "<!-- config-hash: " << hash << " -->\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<metadata>config-hash " << hash << "; experiment " << cfg.experiment << "</metadata>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (series.empty()) {
    o << "<text x=\"" << W / 2 << "\" y=\"" << H / 2 << "\" text-anchor=\"middle\">no plottable rows</text>\n</svg>\n";
    return o.str();
  }
  if (xmax - xmin < 1e-9) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  char buf[256];
  o << "<g stroke=\"black\" fill=\"none\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n", L, H - B, W - R, H - B);
  o << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n", L, T, L, H - B);
  o << buf << "</g>\n";
  o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">1e%d</text>\n", px(d),
                  H - B + 16, d);
    o << buf;
  }
  for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">1e%d</text>\n", L - 6, py(d) + 4,
                  d);
    o << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">N</text>\n", (L + W - R) / 2,
                H - 12);
  o << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"20\" text-anchor=\"middle\">%s</text>\n", W / 2,
                cfg.experiment.c_str());
  o << buf << "</g>\n";
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* c = colors[i % 8];
    const auto path = [&](const std::vector<std::pair<double, double>>& pts, const char* dash) {
      o << "<polyline fill=\"none\" stroke=\"" << c << "\"" << dash << " points=\"";
      for (const auto& [x, y] : pts) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
        o << buf;
      }
      o << "\"/>\n";
    };
    path(s.value, "");
    path(s.norm, " stroke-dasharray=\"4 3\"");
    for (const auto& [x, y] : s.value) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", px(x), py(y), c);
      o << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                  W - R + 10, T + 16.0 * static_cast<double>(i), c, s.name.c_str());
    o << buf;
  }
  o << "</svg>\n";
  return o.str();
}

EmittedFiles emit(const SweepResult& result, const SweepConfig& cfg) {
  if (result.rows.empty()) throw std::invalid_argument("nothing to emit: no rows");
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto write = [](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
  };
  EmittedFiles files;
  files.csv = (dir / (cfg.experiment + ".csv")).string();
  write(files.csv, to_csv(result.rows));
  if (cfg.svg) {
    files.svg = (dir / (cfg.experiment + ".svg")).string();
    write(files.svg, to_svg(result.rows, cfg));
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash()));
  std::string summary = "experiment = " + cfg.experiment + "\nconfig-hash = " + hash + "\nrows = " +
                        std::to_string(result.rows.size()) + "\nfailures = " + std::to_string(result.failures) + "\n";
  for (const std::string& line : result.summary) summary += line + "\n";
  files.summary = (dir / (cfg.experiment + ".summary.txt")).string();
  write(files.summary, summary);
  return files;
}

}  // namespace besovcap
