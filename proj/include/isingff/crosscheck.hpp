#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "isingff/errors.hpp"
#include "isingff/model.hpp"

namespace isingff {

enum class Method { Toeplitz, FormFactor, FredholmCont, FredholmDisc, Exact };

std::string to_string(Method m);
Method parse_method(const std::string& s);
const std::vector<Method>& all_methods();

struct RouteOptions {
  int p_max = 3;   // form-factor orders (and Neumann orders reported)
  int trunc = 0;   // discrete window, 0 = adaptive
  int q = 24;      // form-factor Gauss-Jacobi points per variable
  int q_cont = 32; // Nystrom points
};

// The correlation <sigma_00 sigma_nn>(lambda) by one route, (1-t)^{1/4}
// prefactor included. Toeplitz at lambda != 1 uses the G-matrix Toeplitz
// determinant; exact is n = 0 only.
double route_value(const ModelPoint& point, Method method, const RouteOptions& opt = {});

// Whether `method` is defined as an independent route at this point; `why`
// gets the reason when it is not. Accuracy gates (form-factor tail, Nystrom
// doubling) are applied by crosscheck_point.
bool route_applicable(const ModelPoint& point, Method method, std::string* why = nullptr);

struct Gap {
  std::string a, b;
  double abs = 0.0, rel = 0.0, tol = 0.0;
  bool pass = true;
};

struct Identity {
  std::string name;
  double residual = 0.0, tol = 0.0;
  bool pass = true;
};

// Identities whose name ends in this suffix are reported but never fail a run.
inline constexpr const char* kConjectureSuffix = "_conjecture";

struct CrosscheckReport {
  ModelPoint point;
  std::map<std::string, double> values;
  std::vector<Gap> gaps;
  std::vector<Identity> identities;
  std::map<std::string, std::string> versions;
  std::map<std::string, double> budgets;

  bool pass() const;
  double max_gap() const;
};

struct CrosscheckOptions {
  RouteOptions routes;
  double tol = 1e-7;
  double sigma_h = 1e-3;
};

CrosscheckReport crosscheck_point(const ModelPoint& point, const CrosscheckOptions& opt = {});

// Single-route report (used by `correlate --json/--csv`).
CrosscheckReport single_route_report(const ModelPoint& point, Method method,
                                     const RouteOptions& opt = {});

// Deterministic JSON text (sorted keys, shortest round-trip doubles).
std::string to_json(const CrosscheckReport& r, int indent = 2);
std::string to_json(const std::vector<CrosscheckReport>& rs, int indent = 2);
CrosscheckReport report_from_json(const std::string& text);
std::vector<CrosscheckReport> reports_from_json(const std::string& text);

// CSV with header
//   phase,n,t,lambda,kind,a,b,value,abs,rel,tol,pass
// one `value` row per route and one `gap` row per pair.
std::string to_csv(const std::vector<CrosscheckReport>& rs);

// Grid syntax: comma-separated key=values with keys n, t, lambda, phase.
// Values: `a..b` (integers), `a:b:k` (k equispaced points), `v1;v2;...`, or
// a single value. phase defaults to both.
std::vector<ModelPoint> parse_grid(const std::string& spec);

// Shortest decimal that round-trips, with ".0" appended to integral values.
std::string format_double(double v);

// Worker count from ISINGFF_THREADS (default: hardware concurrency).
int thread_count();

// Runs f(0..count-1) on up to thread_count() threads; results keep index order.
// The first exception (lowest index) is rethrown after all workers finish.
template <typename T>
std::vector<T> parallel_map(int count, const std::function<T(int)>& f);

}  // namespace isingff

#include "isingff/detail/parallel.hpp"
