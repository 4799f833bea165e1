#include "isingff/crosscheck.hpp"

#include <Eigen/Core>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "isingff/elliptic_exact.hpp"
#include "isingff/formfactor.hpp"
#include "isingff/fredholm_cont.hpp"
#include "isingff/painleve.hpp"
#include "isingff/scattering.hpp"
#include "isingff/toeplitz_bops.hpp"

namespace isingff {

using nlohmann::json;

std::string to_string(Method m) {
  switch (m) {
    case Method::Toeplitz: return "toeplitz";
    case Method::FormFactor: return "formfactor";
    case Method::FredholmCont: return "fredholm-cont";
    case Method::FredholmDisc: return "fredholm-disc";
    case Method::Exact: return "exact";
  }
  return "?";
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> m = {Method::Toeplitz, Method::FormFactor, Method::FredholmCont,
                                        Method::FredholmDisc, Method::Exact};
  return m;
}

Method parse_method(const std::string& s) {
  for (Method m : all_methods())
    if (to_string(m) == s) return m;
  throw DomainError("unknown method '" + s + "'");
}

namespace {

double prefactor(double t) { return std::pow(1.0 - t, 0.25); }

// t = 0: the low symbol is 1 and the high symbol is -1/z.
double trivial_correlation(const ModelPoint& p) {
  return (p.phase == Phase::Low || p.n == 0) ? 1.0 : 0.0;
}

double toeplitz_correlation(const ModelPoint& p, int trunc) {
  if (p.lambda != 1.0) return toeplitz_from_g(p, trunc);
  const int k_max = p.n + 2 + moment_decay_length(p.t, 1e-18);
  return toeplitz_det(ising_moments(p.phase, p.t, k_max), p.n, 0);
}

}  // namespace

bool route_applicable(const ModelPoint& p, Method m, std::string* why) {
  auto no = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  switch (m) {
    case Method::Toeplitz:
      if (p.lambda != 1.0) return no("moment determinant needs lambda = 1");
      return true;
    case Method::Exact:
      if (p.n != 0) return no("closed forms exist for n = 0 only");
      if (!(p.t > 0.0)) return no("closed forms need t > 0");
      if (p.lambda > 1.0) return no("closed forms need lambda <= 1");
      return true;
    case Method::FredholmCont:
      if (!(p.t > 0.0)) return no("continuous kernel degenerates at t = 0");
      return true;
    default:
      return true;
  }
}

double route_value(const ModelPoint& p, Method m, const RouteOptions& opt) {
  p.validate();
  std::string why;
  if (m == Method::Exact && !route_applicable(p, m, &why)) throw DomainError("exact: " + why);
  switch (m) {
    case Method::Toeplitz: return toeplitz_correlation(p, opt.trunc);
    case Method::FormFactor: return correlation_series(p, opt.p_max, opt.q).value;
    case Method::FredholmCont:
      if (p.t == 0.0) return trivial_correlation(p);
      return prefactor(p.t) * fredholm_cont(p, opt.p_max, opt.q_cont).value;
    case Method::FredholmDisc: return prefactor(p.t) * fredholm_disc(p, opt.trunc).value;
    case Method::Exact: {
      const ExactValues v = exact_values(p.t, p.lambda);
      return p.phase == Phase::Low ? v.I0_low : v.I0_high;
    }
  }
  throw DomainError("route_value: unknown method");
}

bool CrosscheckReport::pass() const {
  for (const Gap& g : gaps)
    if (!g.pass) return false;
  const std::string suffix = kConjectureSuffix;
  for (const Identity& i : identities) {
    const bool conj = i.name.size() >= suffix.size() &&
                      i.name.compare(i.name.size() - suffix.size(), suffix.size(), suffix) == 0;
    if (!i.pass && !conj) return false;
  }
  return true;
}

double CrosscheckReport::max_gap() const {
  double m = 0.0;
  for (const Gap& g : gaps) m = std::max(m, g.abs);
  return m;
}

namespace {

std::map<std::string, std::string> version_block() {
  return {{"isingff", "1.0.0"},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                        "." + std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

void add_identity(CrosscheckReport& r, std::string name, double residual, double tol) {
  Identity i;
  i.name = std::move(name);
  i.residual = residual;
  i.tol = tol;
  i.pass = std::isfinite(residual) && std::abs(residual) <= tol;
  r.identities.push_back(i);
}

}  // namespace

CrosscheckReport crosscheck_point(const ModelPoint& p, const CrosscheckOptions& opt) {
  p.validate();
  CrosscheckReport r;
  r.point = p;
  r.versions = version_block();
  const RouteOptions& ro = opt.routes;
  r.budgets = {{"pmax", double(ro.p_max)},
               {"trunc", double(ro.trunc > 0 ? ro.trunc : default_truncation(p.n, p.t))},
               {"q_formfactor", double(ro.q)},
               {"q_nystrom", double(ro.q_cont)},
               {"tol", opt.tol},
               {"sigma_h", opt.sigma_h}};

  std::vector<std::string> order;
  auto put = [&](Method m, double v) {
    r.values[to_string(m)] = v;
    order.push_back(to_string(m));
  };
  if (route_applicable(p, Method::Toeplitz)) put(Method::Toeplitz, route_value(p, Method::Toeplitz, ro));
  {
    // The truncated series only joins the comparison when the first dropped
    // order is an order of magnitude below the tolerance.
    const SeriesValue s = correlation_series(p, ro.p_max, ro.q);
    r.budgets["formfactor_tail"] = s.leading_tail;
    if (s.leading_tail <= 0.1 * opt.tol) put(Method::FormFactor, s.value);
  }
  if (route_applicable(p, Method::FredholmCont)) {
    const ContinuousResult c = fredholm_cont(p, ro.p_max, ro.q_cont);
    r.budgets["nystrom_doubling"] = c.est_error;
    if (c.est_error <= 0.1 * opt.tol) put(Method::FredholmCont, prefactor(p.t) * c.value);
  } else if (p.t == 0.0) {
    put(Method::FredholmCont, trivial_correlation(p));
  }
  put(Method::FredholmDisc, route_value(p, Method::FredholmDisc, ro));
  if (route_applicable(p, Method::Exact)) put(Method::Exact, route_value(p, Method::Exact, ro));

  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j) {
      Gap g;
      g.a = order[i];
      g.b = order[j];
      const double va = r.values[g.a], vb = r.values[g.b];
      g.abs = std::abs(va - vb);
      const double scale = std::max(std::abs(va), std::abs(vb));
      g.rel = scale > 0.0 ? g.abs / scale : 0.0;
      g.tol = opt.tol;
      g.pass = g.abs <= opt.tol;
      r.gaps.push_back(g);
    }

  if (p.t > 0.0) {
    add_identity(r, "g_anchor", g_entry(0, 0, p.t) + g_entry(-1, -1, p.t) + 1.0, 1e-10);
    if (p.lambda == 1.0) {
      const BopsState s = ising_bops(p.phase, p.t, std::max(p.n, 1) + 1);
      add_identity(r, "ops_I0", s.residual_I0, 1e-10);
      add_identity(r, "ops_kappa", s.residual_kappa, 1e-10);
      if (p.phase == Phase::Low && p.t <= 0.5) {
        const int n = 24;
        const double I = toeplitz_det(ising_moments(p.phase, p.t, n + 2 + moment_decay_length(p.t, 1e-18)), n, 0);
        add_identity(r, "szego", I / prefactor(p.t) - 1.0, 1e-5);
      }
    }
    // The stencil error is O(h^2); one Richardson step removes it so the
    // check stays meaningful close to t = 1.
    const double h = opt.sigma_h;
    if (p.t - 2 * h > 0.0 && p.t + 2 * h < 1.0) {
      const bool proven = p.lambda == 1.0;
      const SigmaRoute route = proven ? SigmaRoute::Toeplitz : SigmaRoute::DiscreteFredholm;
      const double r1 = sigma_residual(p, route, h).residual;
      const double r2 = sigma_residual(p, route, 0.5 * h).residual;
      add_identity(r, proven ? std::string("sigma_form") : std::string("sigma_form") + kConjectureSuffix,
                   (4.0 * r2 - r1) / 3.0, 1e-5);
    }
  }
  return r;
}

CrosscheckReport single_route_report(const ModelPoint& p, Method m, const RouteOptions& ro) {
  CrosscheckReport r;
  r.point = p;
  r.versions = version_block();
  r.budgets = {{"pmax", double(ro.p_max)}, {"trunc", double(ro.trunc)}};
  r.values[to_string(m)] = route_value(p, m, ro);
  return r;
}

namespace {

json report_json(const CrosscheckReport& r) {
  json j;
  j["point"] = {{"phase", to_string(r.point.phase)},
                {"n", r.point.n},
                {"t", r.point.t},
                {"lambda", r.point.lambda}};
  j["values"] = json::object();
  for (const auto& [k, v] : r.values) j["values"][k] = v;
  j["gaps"] = json::array();
  for (const Gap& g : r.gaps)
    j["gaps"].push_back({{"a", g.a}, {"b", g.b}, {"abs", g.abs}, {"rel", g.rel}, {"tol", g.tol}, {"pass", g.pass}});
  j["identities"] = json::array();
  for (const Identity& i : r.identities)
    j["identities"].push_back({{"name", i.name}, {"residual", i.residual}, {"tol", i.tol}, {"pass", i.pass}});
  j["meta"] = {{"versions", r.versions}, {"budgets", r.budgets}};
  return j;
}

CrosscheckReport report_of(const json& j) {
  CrosscheckReport r;
  const json& p = j.at("point");
  r.point.phase = parse_phase(p.at("phase").get<std::string>());
  r.point.n = p.at("n").get<int>();
  r.point.t = p.at("t").get<double>();
  r.point.lambda = p.at("lambda").get<double>();
  for (const auto& [k, v] : j.at("values").items()) r.values[k] = v.get<double>();
  for (const json& g : j.at("gaps"))
    r.gaps.push_back({g.at("a").get<std::string>(), g.at("b").get<std::string>(), g.at("abs").get<double>(),
                      g.at("rel").get<double>(), g.at("tol").get<double>(), g.at("pass").get<bool>()});
  for (const json& i : j.at("identities"))
    r.identities.push_back({i.at("name").get<std::string>(), i.at("residual").get<double>(),
                            i.at("tol").get<double>(), i.at("pass").get<bool>()});
  r.versions = j.at("meta").at("versions").get<std::map<std::string, std::string>>();
  r.budgets = j.at("meta").at("budgets").get<std::map<std::string, double>>();
  return r;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("report JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const CrosscheckReport& r, int indent) { return report_json(r).dump(indent); }

std::string to_json(const std::vector<CrosscheckReport>& rs, int indent) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a.dump(indent);
}

CrosscheckReport report_from_json(const std::string& text) {
  try {
    return report_of(parse_text(text));
  } catch (const json::exception& e) {
    throw DomainError(std::string("report JSON: ") + e.what());
  }
}

std::vector<CrosscheckReport> reports_from_json(const std::string& text) {
  const json a = parse_text(text);
  std::vector<CrosscheckReport> out;
  try {
    if (!a.is_array()) return {report_of(a)};
    for (const json& j : a) out.push_back(report_of(j));
  } catch (const json::exception& e) {
    throw DomainError(std::string("report JSON: ") + e.what());
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string to_csv(const std::vector<CrosscheckReport>& rs) {
  std::ostringstream os;
  os << "phase,n,t,lambda,kind,a,b,value,abs,rel,tol,pass\n";
  for (const auto& r : rs) {
    const std::string head = to_string(r.point.phase) + "," + std::to_string(r.point.n) + "," +
                             format_double(r.point.t) + "," + format_double(r.point.lambda) + ",";
    for (const auto& [k, v] : r.values) os << head << "value," << k << ",," << format_double(v) << ",,,,\n";
    for (const Gap& g : r.gaps)
      os << head << "gap," << g.a << "," << g.b << ",," << format_double(g.abs) << ","
         << format_double(g.rel) << "," << format_double(g.tol) << "," << (g.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

namespace {

double parse_real(const std::string& s) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("grid: bad number '" + s + "'");
  }
  if (pos != s.size()) throw DomainError("grid: bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_real(s);
  if (v != std::floor(v)) throw DomainError("grid: expected an integer, got '" + s + "'");
  return int(v);
}

std::vector<std::string> split(const std::string& s, char c) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, c)) out.push_back(cur);
  return out;
}

std::vector<double> parse_values(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (auto d = v.find(".."); d != std::string::npos) {
    const int a = parse_int(v.substr(0, d)), b = parse_int(v.substr(d + 2));
    if (b < a) throw DomainError("grid: empty range for " + key);
    for (int i = a; i <= b; ++i) out.push_back(i);
    return out;
  }
  if (v.find(':') != std::string::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3) throw DomainError("grid: expected a:b:count for " + key);
    const double a = parse_real(parts[0]), b = parse_real(parts[1]);
    const int k = parse_int(parts[2]);
    if (k < 1) throw DomainError("grid: count must be >= 1 for " + key);
    if (k == 1) return {a};
    // Rounded to 12 significant digits so 0.1:0.5:3 yields 0.3, not 0.30000000000000004.
    for (int i = 0; i < k; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", a + (b - a) * i / (k - 1));
      out.push_back(std::strtod(buf, nullptr));
    }
    return out;
  }
  for (const auto& item : split(v, ';')) out.push_back(parse_real(item));
  if (out.empty()) throw DomainError("grid: no values for " + key);
  return out;
}

}  // namespace

std::vector<ModelPoint> parse_grid(const std::string& spec) {
  std::vector<double> ns = {0}, ts, ls = {1.0};
  std::vector<Phase> phases = {Phase::Low, Phase::High};
  bool have_t = false;
  for (const auto& item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("grid: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "n") {
      ns = parse_values(key, val);
      for (double n : ns)
        if (n != std::floor(n)) throw DomainError("grid: n must be integral");
    } else if (key == "t") {
      ts = parse_values(key, val);
      have_t = true;
    } else if (key == "lambda") {
      ls = parse_values(key, val);
    } else if (key == "phase") {
      phases.clear();
      for (const auto& s : split(val, ';')) {
        if (s == "both") phases = {Phase::Low, Phase::High};
        else phases.push_back(parse_phase(s));
      }
    } else {
      throw DomainError("grid: unknown key '" + key + "'");
    }
  }
  if (!have_t) throw DomainError("grid: t values are required");
  std::vector<ModelPoint> pts;
  for (Phase ph : phases)
    for (double n : ns)
      for (double t : ts)
        for (double l : ls) {
          ModelPoint p{ph, t, l, int(n)};
          p.validate();
          pts.push_back(p);
        }
  return pts;
}

int thread_count() {
  if (const char* e = std::getenv("ISINGFF_THREADS")) {
    const int v = std::atoi(e);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

}  // namespace isingff
