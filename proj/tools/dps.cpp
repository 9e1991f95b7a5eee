// dps: potential tables, Green's function samples, the Moller element and the
// invariant suite on the command line.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "dps/checks.hpp"
#include "dps/errors.hpp"
#include "dps/greens.hpp"
#include "dps/scattering.hpp"

namespace {

using namespace dps;

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_nonconvergence = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double mu = 1.0;
  double m = 1.0;
  double g = 1.0;
  int n_max = 10;
  QuadratureConfig quad;
  bool no_refine = false;
  std::string out_path = "-";
  std::string x_map = "sqrt2n1";
  std::string format = "csv";
  std::string gnuplot_path;
  std::vector<int> n{0, 0, 0}, nhat{0, 0, 0};
  bool tensor = false;
  std::vector<double> p1{0, 0, 0}, p2{0, 0, 0}, p1p{0, 0, 0}, p2p{0, 0, 0};
  int r1 = 1, r2 = 1, r1p = 1, r2p = 1;
  std::string suite = "fast";
  std::string fault = "none";
};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string fmt(int x) { return std::to_string(x); }
std::string fmt_bool(bool x) { return x ? "1" : "0"; }

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void meta(const std::string& key, const std::string& value) { meta_.push_back("# " + key + "=" + value); }
  void resize(std::size_t n) { rows_.resize(n); }
  std::size_t size() const { return rows_.size(); }
  std::vector<std::string>& at(std::size_t i) { return rows_[i]; }
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void write(std::ostream& os, char sep) const {
    for (const auto& m : meta_) os << m << '\n';
    write_row(os, columns_, sep);
    for (const auto& r : rows_) write_row(os, r, sep);
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& r, char sep) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << sep;
      os << r[i];
    }
    os << '\n';
  }
  std::vector<std::string> columns_;
  std::vector<std::string> meta_;
  std::vector<std::vector<std::string>> rows_;
};

unsigned thread_count() {
  const char* env = std::getenv("DPS_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) {
    throw UsageError("DPS_THREADS must be an integer in [1, 256], got '" + std::string(env) + "'");
  }
  return static_cast<unsigned>(v);
}

// f(i) for i in [0, n) on up to DPS_THREADS threads. Each row is written by
// index, so the output never depends on scheduling.
template <class F>
void parallel_rows(std::size_t n, F&& f) {
  const auto threads = static_cast<unsigned>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double map_x(const RunConfig& c, int index) {
  return c.x_map == "index" ? static_cast<double>(index) : std::sqrt(2.0 * index + 1.0);
}

// 1/(4 pi x) e^{-mu x}; +inf at x = 0.
double w_continuum(double x, double mu) {
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return std::exp(-mu * x) / (4.0 * pi * x);
}

void quad_meta(Table& t, const RunConfig& c) {
  t.meta("command", c.command);
  t.meta("gh_nodes", fmt(c.quad.gh_nodes));
  t.meta("radial_nodes", fmt(c.quad.radial_nodes));
  t.meta("tol", fmt(c.quad.tol));
  t.meta("refine", fmt_bool(c.quad.refine));
  t.meta("format", c.format);
}

Table cmd_yukawa(const RunConfig& c) {
  if (!(c.mu > 0.0)) {
    throw UsageError("--mu: yukawa needs mu in (0, inf), got " + fmt(c.mu) + "; use 'coulomb' for mu = 0");
  }
  Table t({"n1", "x", "w_discrete", "v_discrete", "err_estimate", "w_continuum", "v_continuum",
           "closed_form"});
  quad_meta(t, c);
  t.meta("mu", fmt(c.mu));
  t.meta("g", fmt(c.g));
  t.meta("n_max", fmt(c.n_max));
  t.meta("x_map", c.x_map);
  t.meta("coincidence_closed_form", fmt(yukawa_coincidence(c.mu)));
  t.resize(static_cast<std::size_t>(c.n_max) + 1);
  parallel_rows(t.size(), [&](std::size_t i) {
    const int n1 = static_cast<int>(i);
    const GreensValue w = w_sharp_value(n1, c.mu, c.quad);
    const double x = map_x(c, n1);
    const double wc = w_continuum(x, c.mu);
    t.at(i) = {fmt(n1), fmt(x), fmt(w.value.real()), fmt(-c.g * c.g * w.value.real()),
               fmt(w.err_estimate), fmt(wc), fmt(-c.g * c.g * wc),
               n1 == 0 ? fmt(yukawa_coincidence(c.mu)) : ""};
  });
  return t;
}

Table cmd_coulomb(const RunConfig& c) {
  Table t({"index", "x", "w_discrete", "w_quadrature", "err_estimate", "w_continuum",
           "four_pi_w_continuum"});
  quad_meta(t, c);
  t.meta("n_max", fmt(c.n_max));
  t.meta("x_map", c.x_map);
  t.meta("rows", "index = 2*n1 for n1 = 0..n_max; odd indices vanish");
  t.resize(static_cast<std::size_t>(c.n_max) + 1);
  parallel_rows(t.size(), [&](std::size_t i) {
    const int n1 = static_cast<int>(i);
    const int index = 2 * n1;
    const GreensValue q = coulomb_quadrature(index, c.quad);
    const double x = map_x(c, index);
    const double wc = w_continuum(x, 0.0);
    t.at(i) = {fmt(index), fmt(x), fmt(coulomb_even(n1)), fmt(q.value.real()), fmt(q.err_estimate),
               fmt(wc), fmt(4.0 * pi * wc)};
  });
  return t;
}

void write_gnuplot(const RunConfig& c) {
  std::ofstream gp(c.gnuplot_path);
  if (!gp) throw UsageError("--gnuplot: cannot write '" + c.gnuplot_path + "'");
  const std::string data = c.out_path == "-" ? "coulomb.csv" : c.out_path;
  const char sep = c.format == "tsv" ? '\t' : ',';
  gp << "# Discrete Coulomb W#(m;0) against the continuum 1/(4 pi x) and 1/x.\n";
  gp << "set datafile separator " << (sep == ',' ? "','" : "'\\t'") << "\n";
  gp << "set datafile commentschars '#'\n";
  gp << "set key autotitle columnhead\n";
  gp << "set xlabel '" << (c.x_map == "index" ? "grid index m" : "sqrt(2m+1)") << "'\n";
  gp << "set ylabel 'W'\n";
  gp << "set yrange [0:3]\n";
  gp << "plot '" << data << "' using 2:3 with linespoints title 'W#(m;0)', \\\n";
  gp << "     '' using 2:6 with lines title '1/(4 pi x)', \\\n";
  gp << "     '' using 2:7 with lines title '1/x'\n";
}

Table cmd_continuum(const RunConfig& c) {
  if (!(c.mu > 0.0)) throw UsageError("--mu: continuum needs mu in (0, inf), got " + fmt(c.mu));
  Table t({"index", "x", "v_closed", "v_oracle", "rel_diff"});
  quad_meta(t, c);
  t.meta("mu", fmt(c.mu));
  t.meta("g", fmt(c.g));
  t.meta("n_max", fmt(c.n_max));
  t.meta("x_map", c.x_map);
  t.resize(static_cast<std::size_t>(c.n_max) + 1);
  parallel_rows(t.size(), [&](std::size_t i) {
    const int index = static_cast<int>(i);
    const double x = map_x(c, index);
    if (x == 0.0) {
      t.at(i) = {fmt(index), fmt(x), "-inf", "-inf", "nan"};
      return;
    }
    const double closed = continuum_yukawa(x, c.mu, c.g);
    const double oracle = c.g * c.g * continuum_yukawa_oracle(x, c.mu, c.quad);
    t.at(i) = {fmt(index), fmt(x), fmt(closed), fmt(oracle), fmt(std::abs(oracle / closed - 1.0))};
  });
  return t;
}

GridIndex to_index(const std::vector<int>& v, const char* flag) {
  if (v.size() != 3) throw UsageError(std::string(flag) + ": expected three comma-separated integers");
  for (int x : v) {
    if (x < 0) throw UsageError(std::string(flag) + ": components must be in [0, inf)");
  }
  return {v[0], v[1], v[2]};
}

MomentumVec to_momentum(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) throw UsageError(std::string(flag) + ": expected three comma-separated reals");
  return {v[0], v[1], v[2]};
}

Table cmd_greens(const RunConfig& c) {
  if (!(c.mu > 0.0)) throw UsageError("--mu: greens needs mu in (0, inf), got " + fmt(c.mu));
  const GridIndex n = to_index(c.n, "--n");
  const GridIndex nh = to_index(c.nhat, "--nhat");
  Table t({"n1", "n2", "n3", "nhat1", "nhat2", "nhat3", "mu", "g_re", "g_im", "err_estimate",
           "g_tensor_re", "g_tensor_im", "err_tensor", "equation_residual"});
  quad_meta(t, c);
  t.meta("mu", fmt(c.mu));
  t.meta("tensor", fmt_bool(c.tensor));
  const GreensValue s = g_sharp(n, nh, c.mu, c.quad);
  GreensValue tv{{std::nan(""), std::nan("")}, std::nan("")};
  if (c.tensor) tv = g_sharp_tensor(n, nh, c.mu, c.quad);
  const double res = difference_equation_residual(n, nh, c.mu, c.quad);
  t.row({fmt(n[0]), fmt(n[1]), fmt(n[2]), fmt(nh[0]), fmt(nh[1]), fmt(nh[2]), fmt(c.mu),
         fmt(s.value.real()), fmt(s.value.imag()), fmt(s.err_estimate), fmt(tv.value.real()),
         fmt(tv.value.imag()), fmt(tv.err_estimate), fmt(res)});
  return t;
}

Table cmd_moller(const RunConfig& c) {
  MollerKinematics kin;
  kin.p1 = to_momentum(c.p1, "--p1");
  kin.p2 = to_momentum(c.p2, "--p2");
  kin.p1p = to_momentum(c.p1p, "--p1p");
  kin.p2p = to_momentum(c.p2p, "--p2p");
  kin.m = c.m;
  kin.mu = c.mu;
  kin.g = c.g;
  kin.r1 = c.r1;
  kin.r2 = c.r2;
  kin.r1p = c.r1p;
  kin.r2p = c.r2p;
  const VertexTruncation trunc{c.n_max};
  const MollerResult r = moller_reduced_element(kin, trunc, c.quad);
  const complex cont = continuum_moller_reduced(kin);
  Table t({"discrete_re", "discrete_im", "continuum_re", "continuum_im", "conservation_defect",
           "truncation_diagnostic", "truncation_warning", "err_estimate", "low_momentum_valid"});
  quad_meta(t, c);
  auto vec = [](const MomentumVec& p) { return fmt(p[0]) + ";" + fmt(p[1]) + ";" + fmt(p[2]); };
  t.meta("p1", vec(kin.p1));
  t.meta("p2", vec(kin.p2));
  t.meta("p1p", vec(kin.p1p));
  t.meta("p2p", vec(kin.p2p));
  t.meta("spins", fmt(c.r1) + ";" + fmt(c.r2) + ";" + fmt(c.r1p) + ";" + fmt(c.r2p));
  t.meta("m", fmt(c.m));
  t.meta("mu", fmt(c.mu));
  t.meta("g", fmt(c.g));
  t.meta("n_max", fmt(c.n_max));
  t.row({fmt(r.value.real()), fmt(r.value.imag()), fmt(cont.real()), fmt(cont.imag()),
         fmt(r.conservation_defect), fmt(r.truncation_diagnostic), fmt_bool(r.truncation_warning),
         fmt(r.err_estimate), fmt_bool(r.low_momentum_valid)});
  return t;
}

Table cmd_check(const RunConfig& c, bool& all_pass) {
  CheckOptions opts;
  if (c.fault == "gamma") opts.gammas = corrupted_gamma_set();
  const auto results = run_checks(c.suite == "full" ? CheckSuite::full : CheckSuite::fast, opts);
  Table t({"check", "tolerance", "observed", "pass"});
  t.meta("command", c.command);
  t.meta("suite", c.suite);
  t.meta("inject_fault", c.fault);
  t.meta("format", c.format);
  all_pass = true;
  for (const auto& r : results) {
    t.row({r.name, fmt(r.tolerance), fmt(r.observed), fmt_bool(r.pass)});
    if (!r.pass) {
      all_pass = false;
      std::cerr << "FAILED " << r.name << ": observed " << fmt(r.observed) << " > tolerance "
                << fmt(r.tolerance) << '\n';
    }
  }
  return t;
}

void add_quad_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--gh-nodes", c.quad.gh_nodes, "Gauss-Hermite nodes per axis")
      ->check(CLI::Range(8, quad::max_hermite_order / 2));
  sub->add_option("--radial-nodes", c.quad.radial_nodes, "node budget of the 1D rules")
      ->check(CLI::Range(16, 100000));
  sub->add_option("--tol", c.quad.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  sub->add_flag("--no-refine", c.no_refine, "skip the doubled-node refinement pass");
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("-o,--out", c.out_path, "output file, '-' for stdout");
  sub->add_option("--format", c.format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
}

void add_table_options(CLI::App* sub, RunConfig& c, int default_n_max) {
  c.n_max = default_n_max;
  sub->add_option("--n-max", c.n_max, "last row index")->check(CLI::Range(0, 100000));
  sub->add_option("--x-map", c.x_map, "continuum abscissa: index or sqrt2n1")
      ->check(CLI::IsMember({"index", "sqrt2n1"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete phase-space Green's functions, potentials and scattering"};
  app.require_subcommand(1);
  RunConfig c;
  c.mu = 1.0;

  auto* yuk = app.add_subcommand("yukawa", "table of W#(n1; mu) against the continuum Yukawa kernel");
  yuk->add_option("--mu", c.mu, "boson mass, > 0")->required();
  yuk->add_option("--g", c.g, "coupling");
  add_table_options(yuk, c, 10);
  add_quad_options(yuk, c);
  add_output_options(yuk, c);

  auto* cou = app.add_subcommand("coulomb", "table of W#(2 n1; 0) against 1/(4 pi x)");
  add_table_options(cou, c, 10);
  add_quad_options(cou, c);
  add_output_options(cou, c);
  cou->add_option("--gnuplot", c.gnuplot_path, "also write a gnuplot script for the table");

  auto* con = app.add_subcommand("continuum", "closed-form Yukawa potential against its Fourier integral");
  con->add_option("--mu", c.mu, "boson mass, > 0")->required();
  con->add_option("--g", c.g, "coupling");
  add_table_options(con, c, 10);
  add_quad_options(con, c);
  add_output_options(con, c);

  auto* gre = app.add_subcommand("greens", "one sample of G#(n, nhat; mu)");
  gre->add_option("--n", c.n, "n1,n2,n3")->delimiter(',')->expected(3);
  gre->add_option("--nhat", c.nhat, "nhat1,nhat2,nhat3")->delimiter(',')->expected(3);
  gre->add_option("--mu", c.mu, "boson mass, > 0")->required();
  gre->add_flag("--tensor", c.tensor, "also evaluate the plain tensor Gauss-Hermite form");
  add_quad_options(gre, c);
  add_output_options(gre, c);

  auto* mol = app.add_subcommand("moller", "second-order Moller reduced element");
  for (auto [flag, vec] : {std::pair{"--p1", &c.p1}, std::pair{"--p2", &c.p2},
                           std::pair{"--p1p", &c.p1p}, std::pair{"--p2p", &c.p2p}}) {
    mol->add_option(flag, *vec, "momentum x,y,z")->delimiter(',')->expected(3);
  }
  for (auto [flag, r] : {std::pair{"--r1", &c.r1}, std::pair{"--r2", &c.r2},
                         std::pair{"--r1p", &c.r1p}, std::pair{"--r2p", &c.r2p}}) {
    mol->add_option(flag, *r, "spin label")->check(CLI::Range(1, 2));
  }
  mol->add_option("--m", c.m, "fermion mass")->check(CLI::PositiveNumber);
  mol->add_option("--mu", c.mu, "boson mass")->check(CLI::NonNegativeNumber);
  mol->add_option("--g", c.g, "coupling");
  mol->add_option("--n-max", c.n_max, "per-axis vertex truncation")->check(CLI::Range(2, 160));
  add_quad_options(mol, c);
  add_output_options(mol, c);

  auto* chk = app.add_subcommand("check", "run the invariant suite");
  chk->add_option("--suite", c.suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  chk->add_option("--inject-fault", c.fault, "none or gamma (negative control)")
      ->check(CLI::IsMember({"none", "gamma"}));
  add_output_options(chk, c);

  mol->callback([&] {
    if (mol->count("--n-max") == 0) c.n_max = 32;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.quad.refine = !c.no_refine;

  try {
    if (!std::isfinite(c.mu) || c.mu < 0.0) throw UsageError("--mu: accepted range [0, inf)");
    c.quad.validate();
    bool all_pass = true;
    Table table = c.command == "yukawa"      ? cmd_yukawa(c)
                  : c.command == "coulomb"   ? cmd_coulomb(c)
                  : c.command == "continuum" ? cmd_continuum(c)
                  : c.command == "greens"    ? cmd_greens(c)
                  : c.command == "moller"    ? cmd_moller(c)
                                             : cmd_check(c, all_pass);
    const char sep = c.format == "tsv" ? '\t' : ',';
    if (c.out_path == "-") {
      table.write(std::cout, sep);
    } else {
      std::ofstream out(c.out_path, std::ios::binary);
      if (!out) throw UsageError("--out: cannot write '" + c.out_path + "'");
      table.write(out, sep);
    }
    if (!c.gnuplot_path.empty()) write_gnuplot(c);
    return all_pass ? exit_ok : exit_check_failed;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_nonconvergence;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
}
