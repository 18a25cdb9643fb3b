// Command-line front end for the lctkit library.
//
// Exit codes: 0 success, 1 verification or precondition failure, 2 usage error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lctkit/io.hpp"
#include "lctkit/isodispersion.hpp"
#include "lctkit/lct.hpp"
#include "lctkit/numerics.hpp"
#include "lctkit/phasespace.hpp"
#include "lctkit/verify.hpp"

namespace {

using namespace lctkit;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Reported as a usage error (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reported as a failure (exit 1) after the output has been written.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  double hbar = 1.0;
  bool hbar_given = false;
  std::string format = "csv";
  std::string output;
  double tolerance = 1.0;
};

io::Format format_of(const Globals& g) { return io::parse_format(g.format); }

// Writes to --output or standard output.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

io::WaveFile load_wave(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open wave file '" + path + "'");
  return io::read_wave(in);
}

Units units_for(const Globals& g, const Units& file_units) {
  return g.hbar_given ? Units(g.hbar) : file_units;
}

void report_warnings(const WaveMeta& meta) {
  for (const auto& w : meta.warnings) std::cerr << "warning: " << w << '\n';
}

UniformGrid grid_or(const std::string& spec, const std::string& like,
                    const UniformGrid& fallback) {
  if (!spec.empty() && !like.empty()) throw UsageError("give --out-grid or --out-grid-like, not both");
  if (!like.empty()) return load_wave(like).wave.grid();
  return spec.empty() ? fallback : io::parse_grid_spec(spec);
}

/// Fidelity of `result` against the samples of `ref` on the same lattice
/// points. The result grid must be an aligned window of the reference grid;
/// representation tags are ignored so that y can be compared with p.
double windowed_fidelity(const SampledWave& result, const SampledWave& ref) {
  const auto& rg = result.grid();
  const auto& fg = ref.grid();
  const double step = fg.step();
  if (std::abs(rg.step() - step) > 1e-9 * step) {
    throw CheckFailed("comparison grids have different steps");
  }
  const double offset = (rg.start() - fg.start()) / step;
  const double j0 = std::round(offset);
  if (std::abs(offset - j0) > 1e-6 || j0 < 0 ||
      j0 + static_cast<double>(rg.count()) > static_cast<double>(fg.count())) {
    throw CheckFailed("result grid is not an aligned window of the comparison grid");
  }
  const auto first = ref.values().begin() + static_cast<std::ptrdiff_t>(j0);
  const SampledWave window(rg, std::vector<cplx>(first, first + rg.count()),
                           result.representation());
  return numerics::fidelity(result, window);
}

double delta_p_from(std::optional<double> flag, const io::WaveFile& f) {
  if (flag) return *flag;
  if (auto it = f.extra.find("delta_p"); it != f.extra.end()) {
    return io::parse_double(it->second, "delta_p");
  }
  throw UsageError("--delta-p is required (the wave file carries no delta_p)");
}

lct::LctParams params_from(const std::string& params_path, std::optional<double> alpha,
                           double delta_p, const Units& units) {
  if (!params_path.empty()) {
    std::ifstream in(params_path);
    if (!in) throw std::runtime_error("cannot open params file '" + params_path + "'");
    return io::read_params(in);
  }
  if (!alpha) throw UsageError("one of --params or --iso-alpha is required");
  return iso::iso_params(*alpha, delta_p, units);
}

// ---------------------------------------------------------------------------

struct BasisArgs {
  int n = 0;
  double X = 0.0, P = 0.0, delta_p = 0.5;
  std::string grid = "-8:0.01:8";
  std::string rep = "coordinate";
};

int run_basis(const Globals& g, const BasisArgs& a) {
  const Units units(g.hbar);
  const phasespace::PhaseSpaceState s(a.n, a.X, a.P, a.delta_p, units);
  const auto grid = io::parse_grid_spec(a.grid);
  auto wave = a.rep == "momentum" ? phasespace::eval_basis_p(s, grid)
                                  : phasespace::eval_basis_x(s, grid);
  report_warnings(wave.meta());
  io::WaveFile f{std::move(wave), units,
                 {{"n", std::to_string(a.n)},
                  {"X", io::format_double(a.X)},
                  {"P", io::format_double(a.P)},
                  {"delta_p", io::format_double(a.delta_p)}}};
  Sink sink(g.output);
  io::write_wave(sink.stream(), f, format_of(g));
  return 0;
}

int run_moments(const Globals& g, const std::string& input) {
  const auto f = load_wave(input);
  const auto m = phasespace::moments(f.wave, units_for(g, f.units));
  report_warnings(m.meta);
  Sink sink(g.output);
  io::write_moments(sink.stream(), m, format_of(g));
  return 0;
}

int run_fourier(const Globals& g, const std::string& input, std::optional<double> center) {
  auto f = load_wave(input);
  f.units = units_for(g, f.units);
  f.wave = numerics::dft_unitary(f.wave, f.units, center);
  report_warnings(f.wave.meta());
  Sink sink(g.output);
  io::write_wave(sink.stream(), f, format_of(g));
  return 0;
}

struct LctArgs {
  std::string input;
  std::string params;
  std::optional<double> alpha;
  std::optional<double> delta_p;
  std::string out_grid;
  std::string out_grid_like;
  std::string compare;
};

int run_lct(const Globals& g, const LctArgs& a) {
  auto f = load_wave(a.input);
  f.units = units_for(g, f.units);
  const double dp = a.params.empty() ? delta_p_from(a.delta_p, f) : 0.0;
  const auto params = params_from(a.params, a.alpha, dp, f.units);
  if (!(params.units() == f.units)) {
    std::cerr << "notice: params hbar differs from the wave's hbar; using the params value\n";
  }
  const auto out_grid = grid_or(a.out_grid, a.out_grid_like, f.wave.grid());
  SampledWave out = [&] {
    try {
      return lct::apply_lct(params, f.wave, out_grid);
    } catch (const ChirpUndersampledError& e) {
      std::ostringstream os;
      os << "input grid step " << std::setprecision(6) << e.step()
         << " does not resolve the kernel chirp; required step <= " << e.required_step();
      throw CheckFailed(os.str());
    }
  }();
  for (const auto& w : out.meta().warnings) {
    std::cerr << (w.rfind("degenerate", 0) == 0 ? "notice: " : "warning: ") << w << '\n';
  }
  io::WaveFile result{std::move(out), params.units(), {}};
  result.extra["delta_p"] = io::format_double(params.delta_p());
  Sink sink(g.output);
  io::write_wave(sink.stream(), result, format_of(g));

  if (!a.compare.empty()) {
    const auto ref = load_wave(a.compare);
    const double fid = windowed_fidelity(result.wave, ref.wave);
    std::cerr << "fidelity=" << io::format_double(fid) << '\n';
  }
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  int n = 0;
  std::optional<double> delta_p;
  std::string X_grid, P_grid;
  std::optional<int> n_max;
  double X = 0.0, P = 0.0;
};

int run_analyze(const Globals& g, const AnalyzeArgs& a) {
  const auto f = load_wave(a.input);
  const Units units = units_for(g, f.units);
  const double dp = delta_p_from(a.delta_p, f);
  Sink sink(g.output);
  if (a.n_max) {
    const auto series = phasespace::project_fixed_center(f.wave, *a.n_max, a.X, a.P, dp, units);
    io::write_series(sink.stream(), series, a.X, a.P, dp, units, format_of(g));
    return 0;
  }
  if (a.X_grid.empty() || a.P_grid.empty()) {
    throw UsageError("analyze needs --X-grid and --P-grid (or --n-max with --X/--P)");
  }
  const auto c = phasespace::analyze(f.wave, a.n, dp, io::parse_grid_spec(a.X_grid),
                                     io::parse_grid_spec(a.P_grid), units);
  io::write_lattice(sink.stream(), c, units, format_of(g));
  return 0;
}

struct SynthesizeArgs {
  std::string input;
  std::string out_grid;
  std::string reference;
};

int run_synthesize(const Globals& g, const SynthesizeArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw std::runtime_error("cannot open coefficient file '" + a.input + "'");
  const auto c = io::read_coefficients(in);
  const Units units = units_for(g, c.units);
  const auto grid = io::parse_grid_spec(a.out_grid);
  auto wave = c.lattice ? phasespace::synthesize_over_XP(*c.lattice, grid, units)
                        : phasespace::synthesize_over_n(c.series, c.X, c.P, c.delta_p, grid, units);
  report_warnings(wave.meta());
  io::WaveFile f{std::move(wave), units, {{"delta_p", io::format_double(c.delta_p)}}};
  Sink sink(g.output);
  io::write_wave(sink.stream(), f, format_of(g));
  if (!a.reference.empty()) {
    const auto ref = load_wave(a.reference);
    std::cerr << "l2_error=" << io::format_double(numerics::relative_l2_error(f.wave, ref.wave))
              << '\n';
  }
  return 0;
}

struct DispersionArgs {
  std::string input;
  std::string kind = "sigma_x";
  std::optional<double> X, P, delta_p;
};

int run_dispersion(const Globals& g, const DispersionArgs& a) {
  auto f = load_wave(a.input);
  f.units = units_for(g, f.units);
  auto from_file = [&](const std::optional<double>& v, const char* key) {
    if (v) return *v;
    if (auto it = f.extra.find(key); it != f.extra.end()) return io::parse_double(it->second, key);
    throw UsageError(std::string("--") + key + " is required");
  };
  const double dp = from_file(a.delta_p, "delta_p");
  const phasespace::PhaseSpaceState centre(0, from_file(a.X, "X"), from_file(a.P, "P"), dp,
                                           f.units);
  const auto kind = a.kind == "sigma_p" ? phasespace::DispersionKind::sigma_p
                                        : phasespace::DispersionKind::sigma_x;
  const auto op = phasespace::DispersionOperatorSpec::for_state(kind, centre);
  f.wave = phasespace::apply_dispersion(op, f.wave, f.units);
  report_warnings(f.wave.meta());
  Sink sink(g.output);
  io::write_wave(sink.stream(), f, format_of(g));
  return 0;
}

struct TransformMomentsArgs {
  std::string input;
  std::string params;
  std::optional<double> alpha;
  std::optional<double> delta_p;
  std::optional<int> n;
  double X = 0.0, P = 0.0;
};

int run_transform_moments(const Globals& g, const TransformMomentsArgs& a) {
  Units units(g.hbar);
  phasespace::MomentSet m;
  std::optional<io::WaveFile> f;
  if (!a.input.empty()) {
    f = load_wave(a.input);
    units = units_for(g, f->units);
  }
  double dp = 0.0;
  if (a.params.empty()) {
    if (a.delta_p) {
      dp = *a.delta_p;
    } else if (f) {
      dp = delta_p_from(std::nullopt, *f);
    } else {
      throw UsageError("--delta-p is required with --iso-alpha");
    }
  }
  const auto params = params_from(a.params, a.alpha, dp, units);
  if (f) {
    m = phasespace::moments(f->wave, units);
  } else if (a.n) {
    m = phasespace::basis_moments(
        phasespace::PhaseSpaceState(*a.n, a.X, a.P, params.delta_p(), params.units()));
  } else {
    throw UsageError("transform-moments needs an input wave or --n/--X/--P");
  }
  const auto out = lct::transform_moments(params, m);
  report_warnings(out.meta);
  Sink sink(g.output);
  io::write_moments(sink.stream(), out, format_of(g));
  return 0;
}

struct VerifyArgs {
  std::uint64_t seed = verify::VerifyOptions{}.seed;
  double perturb = 0.0;
  std::vector<int> only;
};

int run_verify(const Globals& g, const VerifyArgs& a) {
  verify::VerifyOptions opts;
  opts.seed = a.seed;
  opts.tolerance_scale = g.tolerance;
  opts.perturb_symplectic = a.perturb;
  opts.only.insert(a.only.begin(), a.only.end());
  const auto results = verify::run_all(opts);
  bool ok = !results.empty();
  for (const auto& r : results) ok = ok && r.passed;

  Sink sink(g.output);
  auto& os = sink.stream();
  if (format_of(g) == io::Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "verify";
    j["seed"] = a.seed;
    j["passed"] = ok;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      nlohmann::ordered_json e;
      e["id"] = r.id;
      e["name"] = r.name;
      e["passed"] = r.passed;
      e["measured"] = r.measured;
      e["tolerance"] = r.tolerance;
      e["seconds"] = r.seconds;
      e["detail"] = r.detail;
      arr.push_back(std::move(e));
    }
    j["criteria"] = std::move(arr);
    os << j.dump(1) << '\n';
  } else {
    os << "# kind=verify\n# seed=" << a.seed << "\n# columns=id,name,status,measured,tolerance,seconds,detail\n";
    for (const auto& r : results) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e,%.3e,%.3f", r.measured, r.tolerance, r.seconds);
      os << r.id << ',' << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ',' << buf << ",\""
         << r.detail << "\"\n";
    }
  }
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lctkit: phase-space basis states and linear canonical transforms"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--hbar", g.hbar, "Reduced Planck constant")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { g.hbar_given = true; });
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", g.output, "Output path (default: standard output)");
  app.add_option("--tolerance", g.tolerance, "Scale applied to verify tolerances")
      ->check(CLI::PositiveNumber);

  std::function<int()> action;

  BasisArgs basis;
  auto* c_basis = app.add_subcommand("basis", "Sample a harmonic Gaussian basis function");
  c_basis->add_option("--n", basis.n, "Order")->check(CLI::NonNegativeNumber);
  c_basis->add_option("--X", basis.X, "Coordinate centre");
  c_basis->add_option("--P", basis.P, "Momentum centre");
  c_basis->add_option("--delta-p", basis.delta_p, "Momentum width")->check(CLI::PositiveNumber);
  c_basis->add_option("--grid", basis.grid, "start:step:end");
  c_basis->add_option("--rep", basis.rep, "Representation")
      ->check(CLI::IsMember({"coordinate", "momentum"}));
  c_basis->callback([&] { action = [&] { return run_basis(g, basis); }; });

  std::string moments_input;
  auto* c_moments = app.add_subcommand("moments", "Means, variances and codispersions");
  c_moments->add_option("input", moments_input, "Wave file")->required()->check(CLI::ExistingFile);
  c_moments->callback([&] { action = [&] { return run_moments(g, moments_input); }; });

  std::string fourier_input;
  std::optional<double> fourier_center;
  auto* c_fourier = app.add_subcommand("fourier", "Unitary Fourier transform to the conjugate grid");
  c_fourier->add_option("input", fourier_input, "Wave file")->required()->check(CLI::ExistingFile);
  c_fourier->add_option("--center", fourier_center, "Centre of the conjugate grid");
  c_fourier->callback([&] { action = [&] { return run_fourier(g, fourier_input, fourier_center); }; });

  LctArgs lct_args;
  auto* c_lct = app.add_subcommand("lct", "Apply a linear canonical transform to a wave");
  c_lct->add_option("input", lct_args.input, "Wave file")->required()->check(CLI::ExistingFile);
  auto* o_params = c_lct->add_option("--params", lct_args.params, "Parameter file")
                       ->check(CLI::ExistingFile);
  c_lct->add_option("--iso-alpha", lct_args.alpha, "Isodispersion angle")->excludes(o_params);
  c_lct->add_option("--delta-p", lct_args.delta_p, "Reference momentum width")
      ->check(CLI::PositiveNumber);
  c_lct->add_option("--out-grid", lct_args.out_grid, "start:step:end (default: input grid)");
  c_lct->add_option("--out-grid-like", lct_args.out_grid_like, "Use the grid of this wave file")
      ->check(CLI::ExistingFile);
  c_lct->add_option("--compare", lct_args.compare, "Reference wave; prints fidelity")
      ->check(CLI::ExistingFile);
  c_lct->callback([&] { action = [&] { return run_lct(g, lct_args); }; });

  LctArgs frft_args;
  double frft_alpha = 0.0;
  auto* c_frft = app.add_subcommand("frft", "Fractional Fourier transform (lct --iso-alpha)");
  c_frft->add_option("input", frft_args.input, "Wave file")->required()->check(CLI::ExistingFile);
  c_frft->add_option("--alpha", frft_alpha, "Angle")->required();
  c_frft->add_option("--delta-p", frft_args.delta_p, "Reference momentum width")
      ->check(CLI::PositiveNumber);
  c_frft->add_option("--out-grid", frft_args.out_grid, "start:step:end (default: input grid)");
  c_frft->add_option("--out-grid-like", frft_args.out_grid_like, "Use the grid of this wave file")
      ->check(CLI::ExistingFile);
  c_frft->add_option("--compare", frft_args.compare, "Reference wave; prints fidelity")
      ->check(CLI::ExistingFile);
  c_frft->callback([&] {
    frft_args.alpha = frft_alpha;
    action = [&] { return run_lct(g, frft_args); };
  });

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Phase-space coefficients of a wave");
  c_an->add_option("input", an.input, "Wave file")->required()->check(CLI::ExistingFile);
  c_an->add_option("--n", an.n, "Basis order")->check(CLI::NonNegativeNumber);
  c_an->add_option("--delta-p", an.delta_p, "Momentum width")->check(CLI::PositiveNumber);
  c_an->add_option("--X-grid", an.X_grid, "start:step:end");
  c_an->add_option("--P-grid", an.P_grid, "start:step:end");
  c_an->add_option("--n-max", an.n_max, "Project onto n = 0..n-max at (X, P) instead")
      ->check(CLI::NonNegativeNumber);
  c_an->add_option("--X", an.X, "Centre for --n-max");
  c_an->add_option("--P", an.P, "Centre for --n-max");
  c_an->callback([&] { action = [&] { return run_analyze(g, an); }; });

  SynthesizeArgs sy;
  auto* c_sy = app.add_subcommand("synthesize", "Reconstruct a wave from coefficients");
  c_sy->add_option("input", sy.input, "Coefficient file")->required()->check(CLI::ExistingFile);
  c_sy->add_option("--out-grid", sy.out_grid, "start:step:end")->required();
  c_sy->add_option("--reference", sy.reference, "Reference wave; prints relative L2 error")
      ->check(CLI::ExistingFile);
  c_sy->callback([&] { action = [&] { return run_synthesize(g, sy); }; });

  DispersionArgs di;
  auto* c_di = app.add_subcommand("dispersion", "Apply a dispersion operator");
  c_di->add_option("input", di.input, "Wave file")->required()->check(CLI::ExistingFile);
  c_di->add_option("--kind", di.kind, "Operator")->check(CLI::IsMember({"sigma_x", "sigma_p"}));
  c_di->add_option("--X", di.X, "Coordinate centre (default: from file)");
  c_di->add_option("--P", di.P, "Momentum centre (default: from file)");
  c_di->add_option("--delta-p", di.delta_p, "Momentum width (default: from file)")
      ->check(CLI::PositiveNumber);
  c_di->callback([&] { action = [&] { return run_dispersion(g, di); }; });

  TransformMomentsArgs tm;
  auto* c_tm = app.add_subcommand("transform-moments", "Transport moments through a transform");
  c_tm->add_option("input", tm.input, "Wave file (optional)")->check(CLI::ExistingFile);
  auto* o_tm_params = c_tm->add_option("--params", tm.params, "Parameter file")
                          ->check(CLI::ExistingFile);
  c_tm->add_option("--iso-alpha", tm.alpha, "Isodispersion angle")->excludes(o_tm_params);
  c_tm->add_option("--delta-p", tm.delta_p, "Reference momentum width")
      ->check(CLI::PositiveNumber);
  c_tm->add_option("--n", tm.n, "Basis order (closed-form input moments)")
      ->check(CLI::NonNegativeNumber);
  c_tm->add_option("--X", tm.X, "Basis coordinate centre");
  c_tm->add_option("--P", tm.P, "Basis momentum centre");
  c_tm->callback([&] { action = [&] { return run_transform_moments(g, tm); }; });

  VerifyArgs ve;
  auto* c_ve = app.add_subcommand("verify", "Run the property suite");
  c_ve->add_option("--seed", ve.seed, "Random seed");
  c_ve->add_option("--perturb-symplectic", ve.perturb,
                   "Add this to d of every random parameter set (failure drill)");
  c_ve->add_option("--only", ve.only, "Criterion ids to run")->check(CLI::Range(1, 13));
  c_ve->callback([&] { action = [&] { return run_verify(g, ve); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const lctkit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
