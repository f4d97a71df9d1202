#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "momentforge/catalog.hpp"
#include "momentforge/error.hpp"
#include "momentforge/hermite.hpp"
#include "momentforge/json_io.hpp"
#include "momentforge/quadrature.hpp"
#include "momentforge/verify.hpp"

namespace mf = momentforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Output {
  std::string format = "csv";
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      throw mf::UsageError("cannot open output file '" + path + "'");
    }
    f << text;
  }
};

void add_output_options(CLI::App* cmd, Output& out, const std::string& default_format) {
  out.format = default_format;
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out.path, "Write to this file instead of stdout");
}

int run_verify(const std::string& suite, double tol, const Output& out) {
  mf::VerifyOptions opts;
  opts.hankel_tol = tol;
  const auto results = mf::run_suite(suite, opts);
  std::ostringstream s;
  if (out.format == "json") {
    s << mf::report_json(suite, opts, results).dump(2) << "\n";
  } else {
    s << "suite,name,passed,max_residual,threshold\n";
    for (const auto& r : results) {
      s << r.suite << "," << r.name << "," << (r.passed ? "true" : "false") << "," << g17(r.max_residual) << ","
        << g17(r.threshold) << "\n";
    }
  }
  out.write(s.str());
  return mf::all_passed(results) ? kExitOk : kExitFailure;
}

int run_moments(const std::string& id, const mf::CatalogOptions& copts, std::size_t n_max, const Output& out) {
  const auto e = mf::resolve(id, copts);
  if (!e.moments) {
    throw mf::UsageError("'" + id + "' has no moment sequence; try `table`");
  }
  std::ostringstream s;
  if (out.format == "json") {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["moments"] = nlohmann::ordered_json::array();
    j["log_moments"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n <= n_max; ++n) {
      j["moments"].push_back(e.moments->value(n));
      j["log_moments"].push_back(e.moments->log_value(n));
    }
    s << j.dump(2) << "\n";
  } else {
    s << "n,s_n,log_s_n\n";
    for (std::size_t n = 0; n <= n_max; ++n) {
      s << n << "," << g17(e.moments->value(n)) << "," << g17(e.moments->log_value(n)) << "\n";
    }
  }
  out.write(s.str());
  return kExitOk;
}

int run_mellin(const std::string& id, const mf::CatalogOptions& copts, double re, double im, const Output& out) {
  const auto e = mf::resolve(id, copts);
  if (!e.mellin) {
    throw mf::UsageError("'" + id + "' has no Mellin transform");
  }
  const std::complex<double> v = e.mellin({re, im});
  std::ostringstream s;
  if (out.format == "json") {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["z"] = {re, im};
    j["value"] = {v.real(), v.imag()};
    s << j.dump(2) << "\n";
  } else {
    s << "z_re,z_im,value_re,value_im\n" << g17(re) << "," << g17(im) << "," << g17(v.real()) << ","
      << g17(v.imag()) << "\n";
  }
  out.write(s.str());
  return kExitOk;
}

int run_atoms(const std::string& id, const mf::CatalogOptions& copts, const Output& out) {
  const auto e = mf::resolve(id, copts);
  const auto* atomic = e.measure ? std::get_if<mf::AtomicMeasure>(&*e.measure) : nullptr;
  if (!atomic) {
    throw mf::UsageError("'" + id + "' is not an atomic measure");
  }
  std::ostringstream s;
  if (out.format == "json") {
    s << mf::to_json(*atomic).dump(2) << "\n";
  } else {
    s << "location,weight\n";
    if (atomic->zero_mass() > 0.0) {
      s << "0," << g17(atomic->zero_mass()) << "\n";
    }
    for (const auto& a : atomic->atoms()) {
      s << g17(a.location) << "," << g17(a.weight) << "\n";
    }
  }
  out.write(s.str());
  return kExitOk;
}

int run_table(const std::string& id, const mf::CatalogOptions& copts, std::size_t n_max, const Output& out) {
  const auto e = mf::resolve(id, copts);
  std::ostringstream s;
  if (e.series) {
    const auto ps = e.series(n_max);
    s << "k,c_k\n";
    for (std::size_t k = 0; k < ps.coefficients.size(); ++k) {
      s << k << "," << g17(ps.coefficients[k]) << "\n";
    }
  } else if (e.moments && e.measure) {
    const auto cfg = mf::quad_config_from_env();
    s << "n,s_n,measure_moment,abs_error,residual\n";
    for (std::size_t n = 0; n <= n_max; ++n) {
      const double sn = e.moments->value(n);
      const auto m = mf::moment(*e.measure, n, cfg);
      s << n << "," << g17(sn) << "," << g17(m.real()) << "," << g17(m.abs_error) << ","
        << g17(std::abs(m.real() - sn)) << "\n";
    }
  } else if (e.moments) {
    s << "n,s_n,log_s_n\n";
    for (std::size_t n = 0; n <= n_max; ++n) {
      s << n << "," << g17(e.moments->value(n)) << "," << g17(e.moments->log_value(n)) << "\n";
    }
  } else {
    throw mf::UsageError("'" + id + "' has nothing to tabulate");
  }
  out.write(s.str());
  return kExitOk;
}

struct ScanArgs {
  double tmin = -0.95, tmax = 0.95, tstep = 0.05;
  double xmin = -10.0, xmax = 10.0, xstep = 0.25;
  double tol = 1e-10;
};

int run_hermite_scan(const ScanArgs& a, const Output& out) {
  const auto scan = mf::positivity_scan(mf::grid_range(a.tmin, a.tmax, a.tstep),
                                        mf::grid_range(a.xmin, a.xmax, a.xstep), a.tol);
  std::ostringstream s;
  s << "t,x,G,tail_bound,rounding_bound\n";
  for (const auto& p : scan.points) {
    s << g17(p.t) << "," << g17(p.x) << "," << g17(p.value) << "," << g17(p.tail_bound) << ","
      << g17(p.rounding_bound) << "\n";
  }
  out.write(s.str());
  std::cerr << "min G = " << g17(scan.min_value) << " at t = " << g17(scan.argmin_t) << ", x = "
            << g17(scan.argmin_x) << "; all_positive = " << (scan.all_positive ? "true" : "false") << "\n";
  return scan.all_positive ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinitely divisible Stieltjes moment sequences: construction and verification"};
  app.require_subcommand(1);

  std::string suite = "all";
  double verify_tol = 1e-9;
  Output verify_out;
  auto* verify = app.add_subcommand("verify", "Run an identity suite and write a pass/fail report");
  verify->add_option("suite", suite, "hankel | bernstein-rep | qseries | semigroup | hermite | all")
      ->check(CLI::IsMember(mf::suite_names()));
  verify->add_option("--tol", verify_tol, "Relative tolerance of the Hankel positivity checks")
      ->check(CLI::PositiveNumber);
  add_output_options(verify, verify_out, "json");

  std::string id;
  std::size_t n_max = 10;
  mf::CatalogOptions copts;
  const std::string id_help = "Catalog id, one of: " + [] {
    std::string s;
    for (const auto& p : mf::catalog_patterns()) {
      s += (s.empty() ? "" : ", ") + p;
    }
    return s;
  }();
  auto add_catalog = [&](CLI::App* cmd) {
    cmd->add_option("id", id, id_help)->required();
    cmd->add_option("--alpha", copts.alpha, "Bernstein shift alpha");
    cmd->add_option("--beta", copts.beta, "Bernstein step beta")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", copts.tol, "Tail tolerance of truncated series measures")->check(CLI::PositiveNumber);
  };

  Output moments_out;
  auto* moments = app.add_subcommand("moments", "Moment sequence s_0 .. s_N");
  add_catalog(moments);
  moments->add_option("--n-max", n_max, "Largest moment index");
  add_output_options(moments, moments_out, "csv");

  double z_re = 0.0;
  double z_im = 0.0;
  Output mellin_out;
  auto* mellin = app.add_subcommand("mellin", "Mellin transform at a complex point");
  add_catalog(mellin);
  mellin->add_option("--z", z_re, "Real part of z")->required();
  mellin->add_option("--z-im", z_im, "Imaginary part of z");
  add_output_options(mellin, mellin_out, "csv");

  Output atoms_out;
  auto* atoms = app.add_subcommand("atoms", "Atoms of a discrete measure");
  add_catalog(atoms);
  add_output_options(atoms, atoms_out, "csv");

  Output table_out;
  auto* table = app.add_subcommand("table", "Plot-ready table of moments or series coefficients");
  add_catalog(table);
  table->add_option("--n-max", n_max, "Largest index");
  table->add_option("--out", table_out.path, "Write to this file instead of stdout");

  ScanArgs scan;
  Output scan_out;
  auto* hscan = app.add_subcommand("hermite-scan", "Certified positivity scan of G(t,x) as CSV");
  hscan->add_option("--tmin", scan.tmin);
  hscan->add_option("--tmax", scan.tmax);
  hscan->add_option("--tstep", scan.tstep)->check(CLI::PositiveNumber);
  hscan->add_option("--xmin", scan.xmin);
  hscan->add_option("--xmax", scan.xmax);
  hscan->add_option("--xstep", scan.xstep)->check(CLI::PositiveNumber);
  hscan->add_option("--tol", scan.tol)->check(CLI::PositiveNumber);
  hscan->add_option("--out", scan_out.path, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      return run_verify(suite, verify_tol, verify_out);
    }
    if (*moments) {
      return run_moments(id, copts, n_max, moments_out);
    }
    if (*mellin) {
      return run_mellin(id, copts, z_re, z_im, mellin_out);
    }
    if (*atoms) {
      return run_atoms(id, copts, atoms_out);
    }
    if (*table) {
      return run_table(id, copts, n_max, table_out);
    }
    return run_hermite_scan(scan, scan_out);
  } catch (const mf::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mf::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
