#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "defectwalk/defectwalk.hpp"
#include "defectwalk/io.hpp"
#include "defectwalk/oracle/dense.hpp"

namespace defectwalk::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  double omega = 0.0;
  std::vector<double> omega_grid;
  int index = 1;
  long window = 0;
  long steps = 100;
  std::string initial = "origin-up";
  std::string format;
  std::string out;
  std::string tol;
  std::string dump;
  int seed_grid = 60;
  double omega_min = -4.0;
  double omega_max = 4.0;
  int samples = 400;
};

Tolerances tolerances(const Options& o) {
  Tolerances t = Tolerances::from_env();
  if (!o.tol.empty()) t = Tolerances::parse(o.tol, t);
  return t;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file '" + path + "'");
  f << body;
  if (!f) throw DomainError("failed writing output file '" + path + "'");
}

void emit(const Options& o, const std::string& body, std::ostream& out) {
  if (o.out.empty()) {
    out << body;
  } else {
    write_text(o.out, body);
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string fixed(double x, int digits = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

InitialState parse_initial(const std::string& s) {
  for (auto k : {InitialState::origin_up, InitialState::origin_down, InitialState::origin_symmetric}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown initial state '" + s + "'");
}

SpectralQuadruple<Complex> quadruple(const Hooks& hooks, DefectParameter omega) {
  return hooks.quadruple ? hooks.quadruple(omega) : eigenvalues(omega);
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const Options& o, const Hooks& hooks, std::ostream& out) {
  const auto omega = DefectParameter::spectral(o.omega);
  const auto tol = tolerances(o);
  const auto quad = quadruple(hooks, omega);
  std::string body;
  if (o.format == "csv") {
    body = metadata_line({{"command", "spectrum"}, {"omega", format_double(o.omega)}}) + "\n";
    body += "index,re,im,modulus,region\n";
    for (int j = 1; j <= 4; ++j) {
      const Complex l = quad(j);
      body += std::to_string(j) + "," + format_double(l.real()) + "," + format_double(l.imag()) + "," +
              format_double(std::abs(l)) + "," + std::string(to_string(classify(l, tol))) + "\n";
    }
  } else {
    ordered_json j;
    j["version"] = library_version;
    j["omega"] = o.omega;
    j["eigenvalues"] = ordered_json::array();
    for (int k = 1; k <= 4; ++k) {
      const Complex l = quad(k);
      j["eigenvalues"].push_back({{"index", k},
                                  {"re", l.real()},
                                  {"im", l.imag()},
                                  {"modulus", std::abs(l)},
                                  {"region", to_string(classify(l, tol))}});
    }
    body = dump(j);
  }
  emit(o, body, out);
  return success;
}

int cmd_eigvec(const Options& o, std::ostream& out) {
  const auto omega = DefectParameter::spectral(o.omega);
  if (o.index < 1 || o.index > 4) throw DomainError("--index must be in 1..4, got " + std::to_string(o.index));
  if (o.window < 1) throw DomainError("--window must be >= 1");
  const auto tol = tolerances(o);
  const Complex lambda = eigenvalues(omega)(o.index);
  const auto psi = eigenvector(omega, o.index, o.window, Normalization::unit_norm, tol);
  const double residual = eigen_residual(psi, omega, lambda);

  std::string body;
  if (o.format == "json") {
    ordered_json j;
    j["version"] = library_version;
    j["omega"] = o.omega;
    j["index"] = o.index;
    j["lambda"] = {{"re", lambda.real()}, {"im", lambda.imag()}};
    j["window"] = o.window;
    j["residual"] = residual;
    j["sites"] = ordered_json::array();
    for (long x = -o.window; x <= o.window; ++x) {
      const auto& s = psi.at(x);
      j["sites"].push_back({{"x", x},
                            {"reL", s.left.real()},
                            {"imL", s.left.imag()},
                            {"reR", s.right.real()},
                            {"imR", s.right.imag()}});
    }
    body = dump(j);
  } else {
    std::ostringstream csv;
    csv << metadata_line({{"command", "eigvec"},
                          {"omega", format_double(o.omega)},
                          {"index", std::to_string(o.index)},
                          {"window", std::to_string(o.window)},
                          {"lambda_re", format_double(lambda.real())},
                          {"lambda_im", format_double(lambda.imag())},
                          {"normalization", "unit_norm"}})
        << "\n";
    write_wavefunction_csv(csv, psi);
    csv << "# residual=" << format_double(residual) << " interior_margin=2\n";
    body = csv.str();
  }
  emit(o, body, out);
  return success;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const DefectParameter omega(o.omega);
  if (o.steps < 0) throw DomainError("--steps must be >= 0");
  if (o.window < 1) throw DomainError("--window must be >= 1");
  const auto kind = parse_initial(o.initial);
  const auto traj = evolve(initial_state(kind, o.window), omega, o.steps);

  std::string warning;
  if (traj.truncated) {
    warning = "warning: light cone reaches the window edge at t=" + std::to_string(traj.first_truncated_step) +
              "; amplitude leaving [-" + std::to_string(o.window) + ", " + std::to_string(o.window) +
              "] is discarded";
    err << "defectwalk: " << warning << "\n";
  }

  if (!o.dump.empty()) {
    std::ostringstream state;
    state << metadata_line({{"command", "simulate-dump"},
                            {"omega", format_double(o.omega)},
                            {"t", std::to_string(traj.records.back().t)},
                            {"log_scale", format_double(traj.final_log_scale)}})
          << "\n";
    write_wavefunction_csv(state, traj.final_state);
    write_text(o.dump, state.str());
  }

  std::string body;
  if (o.format == "json") {
    ordered_json j;
    j["version"] = library_version;
    j["omega"] = o.omega;
    j["steps"] = o.steps;
    j["window"] = o.window;
    j["initial"] = o.initial;
    j["truncated"] = traj.truncated;
    if (traj.truncated) j["warning"] = warning;
    j["records"] = ordered_json::array();
    for (const auto& r : traj.records) {
      j["records"].push_back({{"t", r.t},
                              {"norm", r.norm},
                              {"origin_weight", r.origin_weight},
                              {"origin_prob_normalized", r.origin_probability},
                              {"growth_rate_running", r.growth_rate}});
    }
    body = dump(j);
  } else {
    body = metadata_line({{"command", "simulate"},
                          {"omega", format_double(o.omega)},
                          {"steps", std::to_string(o.steps)},
                          {"window", std::to_string(o.window)},
                          {"initial", o.initial}}) +
           "\n";
    if (traj.truncated) body += "# " + warning + "\n";
    body += "t,norm,origin_weight,origin_prob_normalized,growth_rate_running\n";
    for (const auto& r : traj.records) {
      body += std::to_string(r.t) + "," + format_double(r.norm) + "," + format_double(r.origin_weight) + "," +
              format_double(r.origin_probability) + "," + format_double(r.growth_rate) + "\n";
    }
  }
  emit(o, body, out);
  return success;
}

int cmd_validate(const Options& o, const Hooks& hooks, std::ostream& out, std::ostream& err) {
  ValidationOptions vo;
  if (!o.omega_grid.empty()) vo.omega_grid = o.omega_grid;
  if (o.seed_grid < 1) throw DomainError("--seed-grid must be >= 1");
  vo.roots.resolution = o.seed_grid;
  vo.tol = tolerances(o);
  if (hooks.quadruple) vo.quadruple = hooks.quadruple;
  const auto report = validate(vo);

  std::string body;
  if (o.format == "csv") {
    body = metadata_line({{"command", "validate"}, {"passed", report.passed() ? "true" : "false"}}) + "\n";
    body += "name,omega,passed,value,threshold,detail\n";
    for (const auto& c : report.checks) {
      body += csv_quote(c.name) + "," + format_double(c.omega) + "," + (c.passed ? "true" : "false") + "," +
              format_double(c.value) + "," + format_double(c.threshold) + "," + csv_quote(c.detail) + "\n";
    }
  } else {
    ordered_json j;
    j["version"] = library_version;
    j["passed"] = report.passed();
    j["omega_grid"] = vo.omega_grid;
    j["checks"] = ordered_json::array();
    for (const auto& c : report.checks) {
      j["checks"].push_back({{"name", c.name},
                             {"omega", c.omega},
                             {"passed", c.passed},
                             {"value", c.value},
                             {"threshold", c.threshold},
                             {"detail", c.detail}});
    }
    body = dump(j);
  }
  emit(o, body, out);
  if (report.passed()) return success;
  const auto failed = report.failures();
  err << "validation failed: " << failed.size() << " of " << report.checks.size() << " checks\n";
  for (const auto& c : failed) {
    err << "  " << c.name << " at omega=" << format_double(c.omega) << ": value " << format_double(c.value)
        << ", threshold " << format_double(c.threshold) << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  }
  return validation_failure;
}

// ---------------------------------------------------------------------------
// figure

struct PlotPoint {
  std::string kind;    // locus, marker, sigma, circle
  std::string branch;  // locus: negative, positive_below_1, positive_above_1
  double omega = std::nan("");
  int index = 0;
  Complex z;
};

std::vector<double> figure_omegas(double lo, double hi, int samples) {
  std::vector<double> w;
  for (int k = 0; k < samples; ++k) {
    const double v = lo + (hi - lo) * k / (samples - 1);
    if (v != 0.0 && v != 1.0) w.push_back(v);
  }
  for (int k = 1; k <= 8; ++k) {
    for (const double v : {1.0 - std::pow(10.0, -k), 1.0 + std::pow(10.0, -k)}) {
      if (v >= lo && v <= hi) w.push_back(v);
    }
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

std::string locus_branch(double w) {
  if (w < 0.0) return "negative";
  return w < 1.0 ? "positive_below_1" : "positive_above_1";
}

int cmd_figure(const Options& o, std::ostream& out) {
  if (!(o.omega_min < o.omega_max) || !std::isfinite(o.omega_min) || !std::isfinite(o.omega_max)) {
    throw DomainError("degenerate omega range: need omega-min < omega-max");
  }
  if (o.samples < 2) throw DomainError("--samples must be >= 2");
  const auto omegas = figure_omegas(o.omega_min, o.omega_max, o.samples);
  if (omegas.empty()) throw DomainError("degenerate omega range: no admissible omega in range");

  std::vector<PlotPoint> pts;
  for (const double w : omegas) {
    const auto quad = eigenvalues(DefectParameter::spectral(w));
    for (int j = 1; j <= 4; ++j) pts.push_back({"locus", locus_branch(w), w, j, quad(j)});
  }
  const auto unitary = eigenvalues(DefectParameter(-1.0));
  for (int j = 1; j <= 4; ++j) pts.push_back({"marker", "negative", -1.0, j, unitary(j)});
  const int arc_samples = 91;
  const auto arcs = essential_spectrum_arcs(arc_samples);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    pts.push_back({"sigma", i < static_cast<std::size_t>(arc_samples) ? "upper" : "lower", std::nan(""), 0, arcs[i]});
  }
  const int circle_samples = 361;
  for (int k = 0; k < circle_samples; ++k) {
    pts.push_back({"circle", "", std::nan(""), 0, std::polar(1.0, 2.0 * std::numbers::pi * k / (circle_samples - 1))});
  }

  double extent = 1.25;
  for (const auto& p : pts) extent = std::max(extent, 1.05 * std::max(std::abs(p.z.real()), std::abs(p.z.imag())));
  const double size = 640.0;
  const double centre = size / 2.0;
  const double scale = (centre - 20.0) / extent;
  auto sx = [&](const Complex& z) { return centre + scale * z.real(); };
  auto sy = [&](const Complex& z) { return centre - scale * z.imag(); };

  std::string csv = metadata_line({{"command", "figure"},
                                   {"omega_min", format_double(o.omega_min)},
                                   {"omega_max", format_double(o.omega_max)},
                                   {"samples", std::to_string(o.samples)}}) +
                    "\n";
  csv += "kind,branch,omega,index,re,im,modulus,svg_x,svg_y\n";
  for (const auto& p : pts) {
    csv += p.kind + "," + p.branch + "," + (std::isnan(p.omega) ? std::string() : format_double(p.omega)) + "," +
           (p.index ? std::to_string(p.index) : std::string()) + "," + format_double(p.z.real()) + "," +
           format_double(p.z.imag()) + "," + format_double(std::abs(p.z)) + "," + format_double(sx(p.z)) + "," +
           format_double(sy(p.z)) + "\n";
  }

  auto polyline = [&](const std::vector<Complex>& zs, const std::string& style) {
    std::string s = "  <polyline fill=\"none\" " + style + " points=\"";
    for (std::size_t i = 0; i < zs.size(); ++i) s += (i ? " " : "") + fixed(sx(zs[i])) + "," + fixed(sy(zs[i]));
    return s + "\"/>\n";
  };
  auto collect = [&](const std::string& kind, const std::string& branch, int index) {
    std::vector<Complex> zs;
    for (const auto& p : pts) {
      if (p.kind == kind && p.branch == branch && p.index == index) zs.push_back(p.z);
    }
    return zs;
  };

  const std::string side = fixed(size, 0);
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + side + "\" height=\"" + side +
         "\" viewBox=\"0 0 " + side + " " + side + "\">\n";
  svg += "  <title>Eigenvalues and essential spectrum of U_omega</title>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + side + "\" height=\"" + side + "\" fill=\"white\"/>\n";
  svg += "  <line x1=\"0\" y1=\"" + fixed(centre) + "\" x2=\"" + side + "\" y2=\"" + fixed(centre) +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  svg += "  <line x1=\"" + fixed(centre) + "\" y1=\"0\" x2=\"" + fixed(centre) + "\" y2=\"" + side +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  svg += polyline(collect("circle", "", 0), "stroke=\"#999999\" stroke-width=\"1\"");
  for (const char* arc : {"upper", "lower"}) svg += polyline(collect("sigma", arc, 0), "stroke=\"black\" stroke-width=\"3\"");
  for (const char* branch : {"negative", "positive_below_1", "positive_above_1"}) {
    const bool negative = std::string_view(branch) == "negative";
    const std::string style = negative ? "stroke=\"#b03a2e\" stroke-width=\"1.5\" stroke-dasharray=\"1.5 3\" stroke-linecap=\"round\""
                                       : "stroke=\"#1f4e9c\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"";
    for (int j = 1; j <= 4; ++j) {
      const auto zs = collect("locus", branch, j);
      if (zs.size() >= 2) svg += polyline(zs, style);
    }
  }
  for (const auto& p : pts) {
    if (p.kind != "marker") continue;
    svg += "  <circle cx=\"" + fixed(sx(p.z)) + "\" cy=\"" + fixed(sy(p.z)) +
           "\" r=\"4\" fill=\"#b03a2e\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  svg += "</svg>\n";

  const std::filesystem::path svg_path = o.out.empty() ? std::filesystem::path("figure.svg") : std::filesystem::path(o.out);
  auto csv_path = svg_path;
  csv_path.replace_extension(".csv");
  if (csv_path == svg_path) csv_path += ".csv";
  write_text(svg_path.string(), svg);
  write_text(csv_path.string(), csv);
  out << "wrote " << svg_path.string() << " and " << csv_path.string() << "\n";
  return success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  Options o;
  CLI::App app{"Point spectrum, eigenvectors and dynamics of the one-defect quantum walk", "defectwalk"};
  app.set_version_flag("--version", std::string(library_version));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "Write output to this path instead of stdout");
    sub->add_option("--tol", o.tol, "Tolerance override: a number or key=value list");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form eigenvalues with region labels");
  spectrum->add_option("--omega", o.omega, "Defect strength, omega not in {0, 1}")->required();

  auto* eigvec = app.add_subcommand("eigvec", "Closed-form eigenvector on [-N, N]");
  eigvec->add_option("--omega", o.omega, "Defect strength, omega not in {0, 1}")->required();
  eigvec->add_option("--index", o.index, "Eigenvalue index 1..4");
  auto* eigvec_window = eigvec->add_option("--window", o.window, "Half-width N of the lattice window (default 32)");

  auto* simulate = app.add_subcommand("simulate", "Iterate U_omega from a state localized at the origin");
  simulate->add_option("--omega", o.omega, "Defect strength, omega != 0")->required();
  simulate->add_option("--steps", o.steps, "Number of steps");
  auto* simulate_window = simulate->add_option("--window", o.window, "Half-width N of the lattice window (default 256)");
  simulate->add_option("--initial", o.initial, "origin-up, origin-down or origin-symmetric");
  simulate->add_option("--dump", o.dump, "Also write the final state as CSV to this path");

  auto* validate_cmd = app.add_subcommand("validate", "Run the numerical cross-checks");
  validate_cmd->add_option("--omega-grid", o.omega_grid, "Comma-separated omega values")->delimiter(',');
  validate_cmd->add_option("--seed-grid", o.seed_grid, "Newton seed grid resolution per half-plane");

  auto* figure = app.add_subcommand("figure", "Write the spectrum picture as SVG plus a CSV of its points");
  figure->add_option("--omega-min", o.omega_min, "Lower end of the omega range");
  figure->add_option("--omega-max", o.omega_max, "Upper end of the omega range");
  figure->add_option("--samples", o.samples, "Uniform omega samples before refinement near 1");
  figure->add_option("--out", o.out, "SVG path; the CSV goes next to it with a .csv extension");

  for (auto* sub : {spectrum, eigvec, simulate, validate_cmd}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return success;
  } catch (const CLI::CallForVersion&) {
    out << library_version << "\n";
    return success;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  }

  if (eigvec->parsed() && eigvec_window->count() == 0) o.window = 32;
  if (simulate->parsed() && simulate_window->count() == 0) o.window = 256;
  if (o.format.empty()) o.format = eigvec->parsed() || simulate->parsed() ? "csv" : "json";

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, hooks, out);
    if (eigvec->parsed()) return cmd_eigvec(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out, err);
    if (validate_cmd->parsed()) return cmd_validate(o, hooks, out, err);
    if (figure->parsed()) return cmd_figure(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace defectwalk::cli
