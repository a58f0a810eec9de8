// Batch front-end: assembles moment systems, computes slip/transport
// coefficient tables, runs the Couette solvers and convergence studies, and
// emits plain CSV for plotting.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "gradbc/asymptotic.hpp"
#include "gradbc/boundary.hpp"
#include "gradbc/convergence.hpp"
#include "gradbc/couette.hpp"
#include "gradbc/couette_solvers.hpp"
#include "gradbc/csv.hpp"
#include "gradbc/half_space.hpp"
#include "gradbc/slip_bc.hpp"
#include "gradbc/wellposed.hpp"

namespace fs = std::filesystem;
using namespace gradbc;

namespace {

// converged reference values used by the production NS runs (chi = 1, BGK)
constexpr double kRefK0 = 1.01619;
constexpr double kRefT0 = 0.38316;
constexpr double kRefT1 = 1.30272;
constexpr double kRefK1 = 0.44046;
constexpr double kRefK2 = -0.76632;
constexpr double kRefT2 = -1.42758;

std::string num_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  std::string s = buf;
  for (auto& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

WallSignal make_wall(const std::string& kind, const std::string& file) {
  if (kind == "cosine") return cosine_wall();
  if (kind != "custom-file") throw std::invalid_argument("unknown wall signal: " + kind);
  // two-column CSV (t, u); piecewise linear value, secant derivative
  auto samples = std::make_shared<std::vector<std::pair<double, double>>>();
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open wall file: " + file);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    double t, u;
    if (std::sscanf(line.c_str(), "%lf,%lf", &t, &u) == 2) samples->emplace_back(t, u);
  }
  if (samples->size() < 2) throw std::runtime_error("wall file needs at least two samples");
  if (std::abs(samples->front().second) > 1e-12)
    throw std::runtime_error("wall signal must vanish at t = 0");
  auto value = [samples](double t) {
    const auto& s = *samples;
    if (t <= s.front().first) return s.front().second;
    for (size_t i = 1; i < s.size(); ++i)
      if (t <= s[i].first) {
        const double w = (t - s[i - 1].first) / (s[i].first - s[i - 1].first);
        return (1.0 - w) * s[i - 1].second + w * s[i].second;
      }
    return s.back().second;
  };
  auto slope = [samples](double t) {
    const auto& s = *samples;
    for (size_t i = 1; i < s.size(); ++i)
      if (t <= s[i].first)
        return (s[i].second - s[i - 1].second) / (s[i].first - s[i - 1].first);
    return 0.0;
  };
  return WallSignal{value, slope};
}

void write_profile(const fs::path& dir, const std::string& stem, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& u, double eps) {
  CsvTable plain;
  plain.header = {"x2", "u1"};
  CsvTable scaled;
  scaled.header = {"x2_over_sqrt_eps", "u1"};
  const double se = std::sqrt(eps);
  for (int i = 0; i < x.size(); ++i) {
    plain.rows.push_back({x(i), u(i)});
    scaled.rows.push_back({x(i) / se, u(i)});
  }
  write_csv(dir / (stem + ".csv"), plain);
  write_csv(dir / (stem + "_scaled.csv"), scaled);
}

void run_assemble(const std::vector<int>& Ms, const std::vector<double>& chis, bool couette,
                  const fs::path& out) {
  fs::create_directories(out);
  for (int M : Ms)
    for (double chi : chis) {
      if (couette && (M % 2) == 0)
        throw std::invalid_argument(
            "assemble --couette requires an odd M (non-characteristic wall); got M = " +
            std::to_string(M));
      const fs::path path =
          out / ("assemble_M" + std::to_string(M) + "_chi" + num_tag(chi) + ".txt");
      std::ofstream rep(path, std::ios::binary);
      if (!rep) throw std::runtime_error("cannot write " + path.string());
      const MomentSystem sys = make_bgk_system(M);
      const int m = sys.basis.even_count(), n = sys.basis.odd_count();
      rep << "M " << M << "\nchi " << format_double(chi) << "\nN " << sys.size() << "\nm " << m
          << "\nn " << n << '\n';
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.A2, Eigen::EigenvaluesOnly);
      int pos = 0, neg = 0, zero = 0;
      for (int i = 0; i < sys.size(); ++i) {
        const double l = es.eigenvalues()(i);
        if (std::abs(l) <= 1e-10)
          ++zero;
        else
          (l > 0 ? pos : neg)++;
      }
      rep << "A2_signature " << pos << " positive, " << neg << " negative, " << zero << " zero\n";
      const PositivityCertificate cert = check_maximal_positive(sys, chi);
      rep << "maximal_positivity dim " << cert.dim_null << " min_quadratic "
          << format_double(cert.min_quadratic) << '\n';
      if (couette) {
        const CouetteSystem cs = build_couette(M, chi);
        const DissipativityCertificate d = check_strict_dissipativity(cs.Bc, cs.Ac);
        rep << "couette_dissipativity_c " << format_double(d.c) << " margin "
            << format_double(d.margin) << (d.found ? "" : " NOT-FOUND") << '\n';
        const CouetteSlipConstants sc = couette_slip_constants(M, chi);
        rep << "K_M " << format_double(sc.K_M) << "\nJ_M " << format_double(sc.J_M) << '\n';
      }
      std::cout << "wrote " << path.string() << '\n';
    }
}

void run_slip_coeffs(const std::vector<int>& Ms, const std::vector<double>& chis,
                     const fs::path& out) {
  if (Ms.empty() || chis.empty()) throw std::invalid_argument("slip-coeffs: empty M or chi list");
  CsvTable t;
  t.header = {"M",      "chi",    "k0",     "t0",     "t1",     "k1",     "k2",     "t2",
              "gamma1", "gamma2", "gamma3", "k0_ref", "t0_ref", "t1_ref", "k1_ref", "k2_ref",
              "t2_ref", "ok"};
  for (int M : Ms)
    for (double chi : chis) {
      std::vector<double> row{static_cast<double>(M), chi};
      double ok = 1.0;
      try {
        const SlipCoefficientSet c = slip_coefficients(M, chi);
        row.insert(row.end(),
                   {c.k0, c.t0, c.t1, c.k1, c.k2, c.t2, c.gamma1, c.gamma2, c.gamma3});
      } catch (const std::exception& e) {
        std::cerr << "slip-coeffs failed at M=" << M << " chi=" << chi << ": " << e.what()
                  << '\n';
        row.insert(row.end(), std::initializer_list<double>{0, 0, 0, 0, 0, 0, 0, 0, 0});
        ok = 0.0;
      }
      row.insert(row.end(), {kRefK0, kRefT0, kRefT1, kRefK1, kRefK2, kRefT2, ok});
      t.rows.push_back(row);
    }
  write_csv(out / "slip_coeffs.csv", t);
  std::cout << "wrote " << (out / "slip_coeffs.csv").string() << '\n';
}

void run_couette(int M, double chi, const std::vector<double>& epss, int grid, double dt,
                 double T, std::vector<double> times, const WallSignal& wall,
                 const fs::path& out) {
  if (epss.empty()) throw std::invalid_argument("couette: empty eps list");
  if (times.empty()) times = {T};
  for (double eps : epss) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("couette: eps must be in (0,1)");
    CouetteRunConfig cfg;
    cfg.eps = eps;
    cfg.n_cells = grid;
    cfg.dt = dt;
    cfg.T = T;
    cfg.times = times;
    const CouetteSystem cs = build_couette(M, chi);
    const MomentProfile mom = solve_moment_couette(cs, wall, cfg);

    CouetteRunConfig ncfg = cfg;
    ncfg.dt = 0.0;  // node-spacing-matched implicit step
    const NsProfile noslip = solve_ns_couette(wall, ncfg, 1.0, NsWallClosure{});
    NsWallClosure s1;
    s1.c1 = std::sqrt(2.0) * kRefK0 * eps;
    const NsProfile slip1 = solve_ns_couette(wall, ncfg, 1.0, s1);
    NsWallClosure s2 = s1;
    s2.c2 = 2.0 * kRefK2 * eps * eps;
    const NsProfile slip2 = solve_ns_couette(wall, ncfg, 1.0, s2);

    for (size_t s = 0; s < times.size(); ++s) {
      const std::string tag = "eps" + num_tag(eps) + "_t" + num_tag(times[s]);
      write_profile(out, "couette_" + tag + "_moment", mom.x, mom.u[s], eps);
      write_profile(out, "couette_" + tag + "_noslip", noslip.x, noslip.u[s], eps);
      write_profile(out, "couette_" + tag + "_slip1", slip1.x, slip1.u[s], eps);
      write_profile(out, "couette_" + tag + "_slip2", slip2.x, slip2.u[s], eps);
    }
    std::cout << "couette eps=" << eps << " done\n";
  }
}

void run_convergence(const std::vector<double>& epss, int grid, double T,
                     std::vector<double> times, const WallSignal& wall, bool composite, int M,
                     double chi, const fs::path& out) {
  if (epss.empty()) throw std::invalid_argument("convergence: empty eps list");
  for (double eps : epss)
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("convergence: eps must be in (0,1)");
  if (times.empty()) times = {T};
  for (double t_out : times) {
    CsvTable data;
    data.header = {"minus_log2_eps", "log2_err_noslip_vs_slip1", "log2_err_slip1_vs_slip2",
                   "log2_spacetime_err1", "log2_spacetime_err2"};
    std::vector<double> e1, e2, st1, st2;
    const int steps = std::max(100, static_cast<int>(std::round(T * grid)));
    for (double eps : epss) {
      CouetteRunConfig cfg;
      cfg.eps = eps;
      cfg.n_cells = grid;
      cfg.T = T;
      for (int s = 0; s <= steps; ++s) cfg.times.push_back(T * s / steps);
      cfg.times.push_back(t_out);
      const NsProfile noslip = solve_ns_couette(wall, cfg, 1.0, NsWallClosure{});
      NsWallClosure c1;
      c1.c1 = std::sqrt(2.0) * kRefK0 * eps;
      const NsProfile slip1 = solve_ns_couette(wall, cfg, 1.0, c1);
      NsWallClosure c2 = c1;
      c2.c2 = 2.0 * kRefK2 * eps * eps;
      const NsProfile slip2 = solve_ns_couette(wall, cfg, 1.0, c2);
      // snapshot errors at t_out (Fig-axes data) and run-integrated errors
      size_t snap = 0;
      for (size_t s = 0; s < noslip.times.size(); ++s)
        if (std::abs(noslip.times[s] - t_out) < 1e-12) snap = s;
      e1.push_back(l2_error(noslip.u[snap], slip1.u[snap], noslip.dx));
      e2.push_back(l2_error(slip1.u[snap], slip2.u[snap], noslip.dx));
      auto spacetime = [&](const NsProfile& x, const NsProfile& y) {
        double acc = 0.0;
        for (int s = 0; s <= steps; ++s) {
          const double w = (s == 0 || s == steps) ? 0.5 : 1.0;
          acc += w * (x.u[s] - y.u[s]).squaredNorm() * x.dx;
        }
        return std::sqrt(acc * (T / steps));
      };
      st1.push_back(spacetime(noslip, slip1));
      st2.push_back(spacetime(slip1, slip2));
      data.rows.push_back({-std::log2(eps), std::log2(e1.back()), std::log2(e2.back()),
                           std::log2(st1.back()), std::log2(st2.back())});
    }
    const std::string tag = "t" + num_tag(t_out);
    write_csv(out / ("convergence_" + tag + ".csv"), data);
    CsvTable slopes;
    slopes.header = {"curve_id", "slope", "fitted"};
    const SlopeFit f1 = fit_slope(epss, st1);
    const SlopeFit f2 = fit_slope(epss, st2);
    slopes.rows.push_back({1.0, f1.slope, f1.fitted ? 1.0 : 0.0});
    slopes.rows.push_back({2.0, f2.slope, f2.fitted ? 1.0 : 0.0});

    if (composite) {
      const CouetteSystem cs = build_couette(M, chi);
      const CouetteKnudsenBasis kb = couette_knudsen_basis(cs);
      const CouetteSlipConstants sc = couette_slip_constants(cs, kb);
      CsvTable cdata;
      cdata.header = {"minus_log2_eps", "log2_err_moment_vs_composite"};
      std::vector<double> ec;
      for (double eps : epss) {
        CouetteRunConfig cfg;
        cfg.eps = eps;
        cfg.n_cells = std::max(grid, static_cast<int>(std::ceil(8.0 / eps)));
        cfg.T = T;
        cfg.times = {t_out};
        const MomentProfile mom = solve_moment_couette(cs, wall, cfg);
        AsymptoticConfig acfg;
        CouetteAsymptotic asym(cs, kb, sc, acfg);
        asym.run(wall, T, {t_out});
        Eigen::MatrixXd Wapp(cs.size(), mom.x.size());
        for (int i = 0; i < mom.x.size(); ++i)
          Wapp.col(i) = asym.composite_state(0, eps, mom.x(i));
        ec.push_back(std::sqrt(mom.dx * (mom.W[0] - Wapp).squaredNorm()));
        cdata.rows.push_back({-std::log2(eps), std::log2(ec.back())});
      }
      write_csv(out / ("convergence_composite_" + tag + ".csv"), cdata);
      const SlopeFit fc = fit_slope(epss, ec);
      slopes.rows.push_back({3.0, fc.slope, fc.fitted ? 1.0 : 0.0});
    }
    write_csv(out / ("convergence_slopes_" + tag + ".csv"), slopes);
    std::cout << "convergence " << tag << ": slope1=" << f1.slope << " slope2=" << f2.slope
              << '\n';
  }
}

void run_records(int M, double chi, const fs::path& out) {
  const SlipCoefficientSet c = slip_coefficients(M, chi);
  const auto recs = slip_bc_records(c);
  CsvTable t;
  t.header = {"order_twice", "relation_id", "term_id", "weight"};
  std::ofstream txt(out / "slip_bc_records.txt", std::ios::binary);
  fs::create_directories(out);
  int rel_id = 0;
  for (const auto& rec : recs) {
    for (const auto& rel : rec.relations) {
      txt << "order " << rec.order_twice << "/2: " << rel.lhs << " =";
      if (rel.terms.empty()) txt << " 0";
      int term_id = 0;
      for (const auto& term : rel.terms) {
        txt << (term_id ? " + " : " ") << term.weight_name << " * " << term.derivative << "["
            << term.field << "^(" << term.field_order << ")," << term.scale << "]";
        t.rows.push_back({rec.order_twice / 2.0, static_cast<double>(rel_id),
                          static_cast<double>(term_id), term.weight});
        ++term_id;
      }
      txt << '\n';
      ++rel_id;
    }
  }
  write_csv(out / "slip_bc_records.csv", t);
  const auto g = gamma_coefficients(make_bgk_system(M));
  const NsCoefficients ns = assemble_ns_system_coeffs(g);
  CsvTable gt;
  gt.header = {"mu", "lambda", "gamma1", "gamma2", "gamma3"};
  gt.rows.push_back({ns.mu, ns.lambda, g[0], g[1], g[2]});
  write_csv(out / "ns_coefficients.csv", gt);
  std::cout << "wrote " << (out / "slip_bc_records.csv").string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linearised moment-system boundary layers: slip coefficients and Couette runs"};
  app.set_config("--config");

  std::vector<int> Ms{9};
  std::vector<double> chis{1.0};
  std::vector<double> epss;
  std::vector<double> times;
  std::string out = "out";
  std::string wall_kind = "cosine";
  std::string wall_file;
  int grid = 2000;
  double dt = 0.0;
  double T = 0.25;
  bool couette_checks = false;
  bool composite = false;

  auto add_common = [&](CLI::App* cmd, bool with_run) {
    cmd->add_option("--M", Ms, "moment orders")->delimiter(',');
    cmd->add_option("--chi", chis, "accommodation coefficients")->delimiter(',');
    cmd->add_option("--out", out, "output directory");
    if (with_run) {
      cmd->add_option("--eps", epss, "Knudsen numbers in (0,1)")->delimiter(',');
      cmd->add_option("--grid", grid, "spatial cells");
      cmd->add_option("--dt", dt, "time step (0: automatic)");
      cmd->add_option("--T", T, "final time");
      cmd->add_option("--times", times, "snapshot times")->delimiter(',');
      cmd->add_option("--wall", wall_kind, "wall signal: cosine | custom-file");
      cmd->add_option("--wall-file", wall_file, "CSV (t,u) for --wall custom-file");
    }
  };

  CLI::App* a = app.add_subcommand("assemble", "matrix summaries and well-posedness checks");
  add_common(a, false);
  a->add_flag("--couette", couette_checks, "also check the decoupled chain (odd M only)");

  CLI::App* s = app.add_subcommand("slip-coeffs", "slip/transport coefficient table");
  add_common(s, false);

  CLI::App* c = app.add_subcommand("couette", "moment and NS velocity profiles");
  add_common(c, true);

  CLI::App* v = app.add_subcommand("convergence", "NS boundary-condition error slopes");
  add_common(v, true);
  v->add_flag("--composite", composite, "also compare the moment run against the composite");

  CLI::App* r = app.add_subcommand("slip-bc-records", "order-by-order boundary relations");
  add_common(r, false);

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path outdir(out);
    fs::create_directories(outdir);
    const WallSignal wall = make_wall(wall_kind, wall_file);
    if (a->parsed()) run_assemble(Ms, chis, couette_checks, outdir);
    if (s->parsed()) run_slip_coeffs(Ms, chis, outdir);
    if (c->parsed()) run_couette(Ms.at(0), chis.at(0), epss, grid, dt, T, times, wall, outdir);
    if (v->parsed())
      run_convergence(epss, grid, T, times, wall, composite, Ms.at(0), chis.at(0), outdir);
    if (r->parsed()) run_records(Ms.at(0), chis.at(0), outdir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
