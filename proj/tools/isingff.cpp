#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isingff/crosscheck.hpp"
#include "isingff/fredholm_cont.hpp"
#include "isingff/scattering.hpp"

using namespace isingff;

namespace {

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ArgumentError("cannot open '" + out + "' for writing");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

ModelPoint make_point(const std::string& phase, int n, double t, double lambda) {
  ModelPoint p;
  try {
    p.phase = parse_phase(phase);
    p.n = n;
    p.t = t;
    p.lambda = lambda;
    p.validate();
  } catch (const DomainError& e) {
    throw ArgumentError(e.what());
  }
  return p;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal Ising correlations: Toeplitz, form-factor and Fredholm routes"};
  app.require_subcommand(1);

  // correlate
  auto* cor = app.add_subcommand("correlate", "Evaluate one route at one point");
  int c_n = 0, c_pmax = 3, c_trunc = 0;
  double c_t = 0, c_lambda = 1;
  std::string c_phase = "low", c_method, c_out;
  bool c_json = false, c_csv = false;
  cor->add_option("--n", c_n, "Diagonal separation")->required()->check(CLI::NonNegativeNumber);
  cor->add_option("--t", c_t, "Temperature variable in [0,1)")->required();
  cor->add_option("--lambda", c_lambda, "Form-factor weight")->capture_default_str();
  cor->add_option("--phase", c_phase, "low|high")->check(CLI::IsMember({"low", "high"}))->capture_default_str();
  cor->add_option("--method", c_method, "Route")
      ->required()
      ->check(CLI::IsMember({"toeplitz", "formfactor", "fredholm-cont", "fredholm-disc", "exact"}));
  cor->add_option("--pmax", c_pmax, "Form-factor orders")->check(CLI::Range(0, 8))->capture_default_str();
  cor->add_option("--trunc", c_trunc, "Discrete window (0 = adaptive)")->check(CLI::NonNegativeNumber);
  auto* cj = cor->add_flag("--json", c_json, "JSON report");
  cor->add_flag("--csv", c_csv, "CSV report")->excludes(cj);
  cor->add_option("--out", c_out, "Output file");

  // crosscheck
  auto* cc = app.add_subcommand("crosscheck", "Run every applicable route on a grid");
  std::string g_spec, g_out;
  double g_tol = 1e-7;
  int g_pmax = 3, g_trunc = 0;
  bool g_json = false, g_csv = false;
  cc->add_option("--grid", g_spec, "e.g. n=0..2,t=0.1:0.5:3,lambda=1[,phase=low]")->required();
  cc->add_option("--tol", g_tol, "Absolute gap tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cc->add_option("--pmax", g_pmax, "Form-factor orders")->check(CLI::Range(0, 8))->capture_default_str();
  cc->add_option("--trunc", g_trunc, "Discrete window (0 = adaptive)")->check(CLI::NonNegativeNumber);
  auto* gj = cc->add_flag("--json", g_json, "JSON reports");
  cc->add_flag("--csv", g_csv, "CSV values and gaps")->excludes(gj);
  cc->add_option("--out", g_out, "Output file (JSON unless --csv)");

  // kernel-dump
  auto* kd = app.add_subcommand("kernel-dump", "Write kernel matrices as CSV");
  std::string k_which, k_out, k_phase = "low";
  int k_n = 0, k_trunc = 0, k_q = 16;
  double k_t = 0.3;
  kd->add_option("--which", k_which, "G|appell-low|appell-high")
      ->required()
      ->check(CLI::IsMember({"G", "appell-low", "appell-high"}));
  kd->add_option("--n", k_n, "Window start / kernel index")->capture_default_str();
  kd->add_option("--t", k_t, "Temperature variable in (0,1)")->capture_default_str();
  kd->add_option("--trunc", k_trunc, "G window size (0 = adaptive)")->check(CLI::NonNegativeNumber);
  kd->add_option("--q", k_q, "Quadrature nodes for the Appell kernels")->check(CLI::Range(1, 512))->capture_default_str();
  kd->add_option("--out", k_out, "Output file");

  // sweep
  auto* sw = app.add_subcommand("sweep", "CSV series along one parameter");
  std::string s_vary, s_phase = "low", s_out, s_methods = "toeplitz,formfactor,fredholm-cont,fredholm-disc,exact";
  int s_n = 0, s_steps = 11, s_pmax = 3, s_trunc = 0;
  double s_t = 0.3, s_lambda = 1.0, s_from = 0.05, s_to = 0.95;
  sw->add_option("--vary", s_vary, "t|lambda|n")->required()->check(CLI::IsMember({"t", "lambda", "n"}));
  sw->add_option("--n", s_n, "Diagonal separation")->check(CLI::NonNegativeNumber)->capture_default_str();
  sw->add_option("--t", s_t, "Temperature variable")->capture_default_str();
  sw->add_option("--lambda", s_lambda, "Form-factor weight")->capture_default_str();
  sw->add_option("--phase", s_phase, "low|high")->check(CLI::IsMember({"low", "high"}))->capture_default_str();
  sw->add_option("--from", s_from, "Start of the varied parameter")->capture_default_str();
  sw->add_option("--to", s_to, "End of the varied parameter")->capture_default_str();
  sw->add_option("--steps", s_steps, "Number of samples")->check(CLI::Range(1, 100000))->capture_default_str();
  sw->add_option("--methods", s_methods, "Comma-separated routes")->capture_default_str();
  sw->add_option("--pmax", s_pmax, "Form-factor orders")->check(CLI::Range(0, 8))->capture_default_str();
  sw->add_option("--trunc", s_trunc, "Discrete window (0 = adaptive)")->check(CLI::NonNegativeNumber);
  sw->add_option("--out", s_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cor->parsed()) {
      const ModelPoint p = make_point(c_phase, c_n, c_t, c_lambda);
      const Method m = parse_method(c_method);
      RouteOptions ro;
      ro.p_max = c_pmax;
      ro.trunc = c_trunc;
      if (m == Method::Exact) {
        std::string why;
        if (!route_applicable(p, m, &why)) throw ArgumentError("exact: " + why);
      }
      if (c_json || c_csv) {
        const CrosscheckReport r = single_route_report(p, m, ro);
        emit(c_json ? to_json(r) : to_csv({r}), c_out);
      } else {
        emit(format_double(route_value(p, m, ro)), c_out);
      }
      return 0;
    }

    if (cc->parsed()) {
      std::vector<ModelPoint> pts;
      try {
        pts = parse_grid(g_spec);
      } catch (const DomainError& e) {
        throw ArgumentError(e.what());
      }
      CrosscheckOptions opt;
      opt.tol = g_tol;
      opt.routes.p_max = g_pmax;
      opt.routes.trunc = g_trunc;
      const auto reports = parallel_map<CrosscheckReport>(
          int(pts.size()), [&](int i) { return crosscheck_point(pts[i], opt); });
      bool ok = true;
      for (const auto& r : reports) ok = ok && r.pass();
      if (g_csv) {
        emit(to_csv(reports), g_out);
      } else if (g_json || !g_out.empty()) {
        emit(to_json(reports), g_out);
      }
      if (!g_json && !g_csv) {
        for (const auto& r : reports) {
          std::string bad;
          for (const auto& g : r.gaps)
            if (!g.pass) bad += " gap:" + g.a + "/" + g.b;
          for (const auto& i : r.identities)
            if (!i.pass) bad += " identity:" + i.name;
          std::printf("%s phase=%s n=%d t=%s lambda=%s routes=%zu max_gap=%.3e%s\n", r.pass() ? "PASS" : "FAIL",
                      to_string(r.point.phase).c_str(), r.point.n, format_double(r.point.t).c_str(),
                      format_double(r.point.lambda).c_str(), r.values.size(), r.max_gap(), bad.c_str());
        }
      }
      return ok ? 0 : 1;
    }

    if (kd->parsed()) {
      if (!(k_t > 0.0 && k_t < 1.0)) throw ArgumentError("--t must lie in (0,1)");
      std::ostringstream os;
      if (k_which == "G") {
        const int N = k_trunc > 0 ? k_trunc : default_truncation(k_n, k_t);
        const KernelMatrix km = build_kernel_matrix(k_n, N, k_t);
        os << "l,m,G\n";
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            os << csv_row({std::to_string(k_n + i), std::to_string(k_n + j), format_double(km.G(i, j))});
      } else {
        if (k_n < 0) throw ArgumentError("--n must be >= 0 for the Appell kernels");
        const bool low = k_which == "appell-low";
        const NystromSystem sys = nystrom_system(low ? Phase::Low : Phase::High, k_n, k_t, k_q);
        const auto& x = sys.rule.nodes;
        os << (low ? "i,j,x,y,K\n" : "i,j,x,y,K0,K1x,K2xy\n");
        for (int i = 0; i < x.size(); ++i)
          for (int j = 0; j < x.size(); ++j) {
            std::vector<std::string> row = {std::to_string(i), std::to_string(j), format_double(x(i)),
                                            format_double(x(j))};
            if (low) {
              row.push_back(format_double(kernel_low(x(i), x(j), k_n, k_t)));
            } else {
              const HighKernel h = kernel_high(x(i), x(j), k_n, k_t);
              row.push_back(format_double(h.K0));
              row.push_back(format_double(h.K1x));
              row.push_back(format_double(h.K2xy));
            }
            os << csv_row(row);
          }
      }
      emit(os.str(), k_out);
      return 0;
    }

    if (sw->parsed()) {
      std::vector<Method> methods;
      {
        std::stringstream ss(s_methods);
        std::string item;
        try {
          while (std::getline(ss, item, ',')) methods.push_back(parse_method(item));
        } catch (const DomainError& e) {
          throw ArgumentError(e.what());
        }
      }
      if (methods.empty()) throw ArgumentError("--methods is empty");
      std::vector<ModelPoint> pts;
      std::vector<std::string> xs;
      for (int i = 0; i < s_steps; ++i) {
        const double u = s_steps == 1 ? s_from : s_from + (s_to - s_from) * i / (s_steps - 1);
        double t = s_t, l = s_lambda;
        int n = s_n;
        if (s_vary == "t") t = u;
        if (s_vary == "lambda") l = u;
        if (s_vary == "n") {
          n = int(std::lround(u));
          if (i > 0 && n == pts.back().n) continue;
        }
        pts.push_back(make_point(s_phase, n, t, l));
        xs.push_back(s_vary == "n" ? std::to_string(n) : format_double(u));
      }
      RouteOptions ro;
      ro.p_max = s_pmax;
      ro.trunc = s_trunc;
      const auto rows = parallel_map<std::vector<std::string>>(int(pts.size()), [&](int i) {
        std::vector<std::string> cells = {xs[i]};
        for (Method m : methods) {
          std::string cell;
          if (route_applicable(pts[i], m)) {
            try {
              cell = format_double(route_value(pts[i], m, ro));
            } catch (const Error&) {
            }
          }
          cells.push_back(cell);
        }
        return cells;
      });
      std::vector<std::string> header = {s_vary};
      for (Method m : methods) header.push_back(to_string(m));
      std::string text = csv_row(header);
      for (const auto& r : rows) text += csv_row(r);
      emit(text, s_out);
      return 0;
    }
  } catch (const ArgumentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
