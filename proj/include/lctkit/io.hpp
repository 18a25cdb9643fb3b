#ifndef LCTKIT_IO_HPP
#define LCTKIT_IO_HPP

#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lctkit/errors.hpp"
#include "lctkit/grid.hpp"
#include "lctkit/lct.hpp"
#include "lctkit/phasespace.hpp"

namespace lctkit::io {

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ParseError("unknown format '" + s + "' (expected csv or json)");
}

/// Shortest text that parses back to the same double (17 significant digits).
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view s, const std::string& what) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("cannot parse " + what + " from '" + std::string(s) + "'");
  }
  return v;
}

inline long long parse_integer(std::string_view s, const std::string& what) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("cannot parse " + what + " from '" + std::string(s) + "'");
  }
  return v;
}

/// `start:step:end`, end snapped down onto the lattice.
inline UniformGrid parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ParseError("grid spec must be start:step:end, got '" + spec + "'");
  return UniformGrid::from_range(parse_double(parts[0], "grid start"),
                                 parse_double(parts[1], "grid step"),
                                 parse_double(parts[2], "grid end"));
}

// ---------------------------------------------------------------------------
// Generic text layout: "# key=value" header lines, then comma-separated rows.

struct TextTable {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::vector<std::string>> rows;

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : header) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const std::string& require(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw ParseError("missing header field '" + key + "'");
    return *v;
  }
};

inline TextTable read_text_table(std::istream& in) {
  TextTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      t.header.emplace_back(key, line.substr(eq + 1));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

inline bool looks_like_json(std::istream& in) {
  in >> std::ws;
  return in.peek() == '{';
}

inline std::string join_warnings(const std::vector<std::string>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + w[i];
  return s;
}

inline std::vector<std::string> split_warnings(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, '|')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline Representation parse_representation(const std::string& s) {
  if (s == "coordinate") return Representation::coordinate;
  if (s == "momentum") return Representation::momentum;
  throw ParseError("unknown representation '" + s + "'");
}

// ---------------------------------------------------------------------------
// Wave files

/// A sampled wave plus the file-level metadata that travels with it.
struct WaveFile {
  SampledWave wave;
  Units units;
  std::map<std::string, std::string> extra;  // e.g. basis-state labels
};

inline void write_wave(std::ostream& out, const WaveFile& f, Format fmt) {
  const auto& w = f.wave;
  const auto& g = w.grid();
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "wave";
    j["representation"] = to_string(w.representation());
    j["start"] = g.start();
    j["step"] = g.step();
    j["count"] = g.count();
    j["hbar"] = f.units.hbar();
    j["normalized"] = w.meta().normalized;
    j["warnings"] = w.meta().warnings;
    for (const auto& [k, v] : f.extra) j[k] = v;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.count(); ++i) {
      rows.push_back({g.point(i), w[i].real(), w[i].imag()});
    }
    j["rows"] = std::move(rows);
    // dump() prints doubles with round-trip precision.
    out << j.dump(1) << '\n';
    return;
  }
  out << "# kind=wave\n";
  out << "# representation=" << to_string(w.representation()) << '\n';
  out << "# start=" << format_double(g.start()) << '\n';
  out << "# step=" << format_double(g.step()) << '\n';
  out << "# count=" << g.count() << '\n';
  out << "# hbar=" << format_double(f.units.hbar()) << '\n';
  out << "# normalized=" << (w.meta().normalized ? "true" : "false") << '\n';
  out << "# warnings=" << join_warnings(w.meta().warnings) << '\n';
  for (const auto& [k, v] : f.extra) out << "# " << k << '=' << v << '\n';
  out << "# columns=coordinate,re,im\n";
  for (std::size_t i = 0; i < g.count(); ++i) {
    out << format_double(g.point(i)) << ',' << format_double(w[i].real()) << ','
        << format_double(w[i].imag()) << '\n';
  }
}

namespace detail {

inline void check_coordinate(const UniformGrid& g, std::size_t i, double x) {
  const double expect = g.point(i);
  if (std::abs(x - expect) > 1e-12 * std::max(std::abs(expect), g.step())) {
    throw ParseError("row " + std::to_string(i) + " coordinate " + format_double(x) +
                     " is off the uniform grid (expected " + format_double(expect) + ")");
  }
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0" || s.empty()) return false;
  throw ParseError("cannot parse boolean from '" + s + "'");
}

inline const std::set<std::string>& wave_keys() {
  static const std::set<std::string> keys{"kind",  "representation", "start",    "step",
                                          "count", "hbar",           "normalized", "warnings",
                                          "columns", "rows"};
  return keys;
}

}  // namespace detail

inline WaveFile read_wave(std::istream& in) {
  if (looks_like_json(in)) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
      if (j.value("kind", std::string("wave")) != "wave") throw ParseError("not a wave file");
      const UniformGrid g(j.at("start").get<double>(), j.at("step").get<double>(),
                          j.at("count").get<std::size_t>());
      const auto& rows = j.at("rows");
      if (rows.size() != g.count()) throw ParseError("row count does not match header count");
      std::vector<cplx> v(g.count());
      for (std::size_t i = 0; i < g.count(); ++i) {
        detail::check_coordinate(g, i, rows[i].at(0).get<double>());
        v[i] = {rows[i].at(1).get<double>(), rows[i].at(2).get<double>()};
      }
      WaveFile f{SampledWave(g, std::move(v),
                             parse_representation(j.at("representation").get<std::string>())),
                 Units(j.value("hbar", 1.0)), {}};
      f.wave.meta().normalized = j.value("normalized", false);
      if (j.contains("warnings")) {
        f.wave.meta().warnings = j["warnings"].get<std::vector<std::string>>();
      }
      for (const auto& [k, v2] : j.items()) {
        if (!detail::wave_keys().count(k) && v2.is_string()) f.extra[k] = v2.get<std::string>();
      }
      return f;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed wave JSON: ") + e.what());
    }
  }

  const auto t = read_text_table(in);
  if (const auto* kind = t.find("kind"); kind && *kind != "wave") {
    throw ParseError("not a wave file (kind=" + *kind + ")");
  }
  const auto count = parse_integer(t.require("count"), "count");
  if (count < 2) throw ParseError("count must be at least 2");
  const UniformGrid g(parse_double(t.require("start"), "start"),
                      parse_double(t.require("step"), "step"), static_cast<std::size_t>(count));
  if (t.rows.size() != g.count()) throw ParseError("row count does not match header count");
  std::vector<cplx> v(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) {
    const auto& r = t.rows[i];
    if (r.size() != 3) throw ParseError("row " + std::to_string(i) + " needs 3 columns");
    detail::check_coordinate(g, i, parse_double(r[0], "coordinate"));
    v[i] = {parse_double(r[1], "real part"), parse_double(r[2], "imaginary part")};
  }
  const auto* hbar = t.find("hbar");
  WaveFile f{SampledWave(g, std::move(v), parse_representation(t.require("representation"))),
             Units(hbar ? parse_double(*hbar, "hbar") : 1.0), {}};
  if (const auto* n = t.find("normalized")) f.wave.meta().normalized = detail::parse_bool(*n);
  if (const auto* w = t.find("warnings")) f.wave.meta().warnings = split_warnings(*w);
  for (const auto& [k, v2] : t.header) {
    if (!detail::wave_keys().count(k)) f.extra[k] = v2;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parameter files

inline void write_params(std::ostream& out, const lct::LctParams& p, Format fmt) {
  const std::pair<const char*, double> fields[] = {
      {"a", p.a()},         {"b", p.b()},             {"c", p.c()},
      {"d", p.d()},         {"delta_p", p.delta_p()}, {"epsilon", p.epsilon()},
      {"hbar", p.units().hbar()}};
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "params";
    for (const auto& [k, v] : fields) j[k] = v;
    out << j.dump(1) << '\n';
    return;
  }
  out << "# kind=params\n";
  for (const auto& [k, v] : fields) out << "# " << k << '=' << format_double(v) << '\n';
}

/// Accepts the header layout, bare `key=value` lines, or JSON. The
/// symplectic residual is validated on load.
inline lct::LctParams read_params(std::istream& in) {
  std::map<std::string, double> kv;
  if (looks_like_json(in)) {
    nlohmann::json j;
    try {
      in >> j;
      for (const char* k : {"a", "b", "c", "d", "delta_p", "epsilon", "hbar"}) {
        if (j.contains(k)) kv[k] = j[k].get<double>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed params JSON: ") + e.what());
    }
  } else {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto body = line;
      if (!body.empty() && body[0] == '#') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      auto key = body.substr(0, eq);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      if (key == "kind") continue;
      kv[key] = parse_double(body.substr(eq + 1), key);
    }
  }
  for (const char* k : {"a", "b", "c", "d", "delta_p"}) {
    if (!kv.count(k)) throw ParseError(std::string("params file lacks '") + k + "'");
  }
  const Units units(kv.count("hbar") ? kv["hbar"] : 1.0);
  return lct::make_params(kv["a"], kv["b"], kv["c"], kv["d"], kv["delta_p"],
                          kv.count("epsilon") ? kv["epsilon"] : 0.0, units);
}

// ---------------------------------------------------------------------------
// Coefficient files

/// Either an (X, P) lattice at fixed n or an n-series at a fixed centre.
struct CoefficientFile {
  std::optional<phasespace::PhaseSpaceCoefficients> lattice;
  std::vector<std::pair<int, cplx>> series;
  double X = 0.0, P = 0.0, delta_p = 1.0;
  Units units;
};

inline void write_lattice(std::ostream& out, const phasespace::PhaseSpaceCoefficients& c,
                          const Units& units, Format fmt) {
  const auto& xg = c.X_grid;
  const auto& pg = c.P_grid;
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "coefficients-xp";
    j["n"] = c.n;
    j["delta_p"] = c.delta_p;
    j["hbar"] = units.hbar();
    j["x_start"] = xg.start();
    j["x_step"] = xg.step();
    j["x_count"] = xg.count();
    j["p_start"] = pg.start();
    j["p_step"] = pg.step();
    j["p_count"] = pg.count();
    j["warnings"] = c.meta.warnings;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < xg.count(); ++i) {
      for (std::size_t k = 0; k < pg.count(); ++k) {
        rows.push_back({xg.point(i), pg.point(k), c.at(i, k).real(), c.at(i, k).imag()});
      }
    }
    j["rows"] = std::move(rows);
    out << j.dump(1) << '\n';
    return;
  }
  out << "# kind=coefficients-xp\n";
  out << "# n=" << c.n << '\n';
  out << "# delta_p=" << format_double(c.delta_p) << '\n';
  out << "# hbar=" << format_double(units.hbar()) << '\n';
  out << "# x_start=" << format_double(xg.start()) << '\n';
  out << "# x_step=" << format_double(xg.step()) << '\n';
  out << "# x_count=" << xg.count() << '\n';
  out << "# p_start=" << format_double(pg.start()) << '\n';
  out << "# p_step=" << format_double(pg.step()) << '\n';
  out << "# p_count=" << pg.count() << '\n';
  out << "# warnings=" << join_warnings(c.meta.warnings) << '\n';
  out << "# columns=X,P,re,im\n";
  for (std::size_t i = 0; i < xg.count(); ++i) {
    for (std::size_t k = 0; k < pg.count(); ++k) {
      out << format_double(xg.point(i)) << ',' << format_double(pg.point(k)) << ','
          << format_double(c.at(i, k).real()) << ',' << format_double(c.at(i, k).imag())
          << '\n';
    }
  }
}

inline void write_series(std::ostream& out, const std::vector<std::pair<int, cplx>>& s,
                         double X, double P, double delta_p, const Units& units, Format fmt) {
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "coefficients-n";
    j["X"] = X;
    j["P"] = P;
    j["delta_p"] = delta_p;
    j["hbar"] = units.hbar();
    auto rows = nlohmann::ordered_json::array();
    for (const auto& [n, c] : s) rows.push_back({n, c.real(), c.imag()});
    j["rows"] = std::move(rows);
    out << j.dump(1) << '\n';
    return;
  }
  out << "# kind=coefficients-n\n";
  out << "# X=" << format_double(X) << '\n';
  out << "# P=" << format_double(P) << '\n';
  out << "# delta_p=" << format_double(delta_p) << '\n';
  out << "# hbar=" << format_double(units.hbar()) << '\n';
  out << "# columns=n,re,im\n";
  for (const auto& [n, c] : s) {
    out << n << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
  }
}

inline CoefficientFile read_coefficients(std::istream& in) {
  CoefficientFile f;
  if (looks_like_json(in)) {
    nlohmann::json j;
    try {
      in >> j;
      const auto kind = j.at("kind").get<std::string>();
      f.units = Units(j.value("hbar", 1.0));
      f.delta_p = j.at("delta_p").get<double>();
      const auto& rows = j.at("rows");
      if (kind == "coefficients-xp") {
        const UniformGrid xg(j.at("x_start").get<double>(), j.at("x_step").get<double>(),
                             j.at("x_count").get<std::size_t>());
        const UniformGrid pg(j.at("p_start").get<double>(), j.at("p_step").get<double>(),
                             j.at("p_count").get<std::size_t>());
        phasespace::PhaseSpaceCoefficients c(j.at("n").get<int>(), f.delta_p, xg, pg);
        if (rows.size() != c.values.size()) throw ParseError("coefficient row count mismatch");
        for (std::size_t r = 0; r < rows.size(); ++r) {
          c.values[r] = {rows[r].at(2).get<double>(), rows[r].at(3).get<double>()};
        }
        f.lattice = std::move(c);
      } else if (kind == "coefficients-n") {
        f.X = j.at("X").get<double>();
        f.P = j.at("P").get<double>();
        for (const auto& r : rows) {
          f.series.emplace_back(r.at(0).get<int>(),
                                cplx(r.at(1).get<double>(), r.at(2).get<double>()));
        }
      } else {
        throw ParseError("unknown coefficient kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed coefficient JSON: ") + e.what());
    }
    return f;
  }

  const auto t = read_text_table(in);
  const auto& kind = t.require("kind");
  if (const auto* h = t.find("hbar")) f.units = Units(parse_double(*h, "hbar"));
  f.delta_p = parse_double(t.require("delta_p"), "delta_p");
  if (kind == "coefficients-xp") {
    const UniformGrid xg(parse_double(t.require("x_start"), "x_start"),
                         parse_double(t.require("x_step"), "x_step"),
                         static_cast<std::size_t>(parse_integer(t.require("x_count"), "x_count")));
    const UniformGrid pg(parse_double(t.require("p_start"), "p_start"),
                         parse_double(t.require("p_step"), "p_step"),
                         static_cast<std::size_t>(parse_integer(t.require("p_count"), "p_count")));
    phasespace::PhaseSpaceCoefficients c(
        static_cast<int>(parse_integer(t.require("n"), "n")), f.delta_p, xg, pg);
    if (t.rows.size() != c.values.size()) throw ParseError("coefficient row count mismatch");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.rows[r].size() != 4) throw ParseError("coefficient rows need 4 columns");
      c.values[r] = {parse_double(t.rows[r][2], "real part"),
                     parse_double(t.rows[r][3], "imaginary part")};
    }
    f.lattice = std::move(c);
  } else if (kind == "coefficients-n") {
    f.X = parse_double(t.require("X"), "X");
    f.P = parse_double(t.require("P"), "P");
    for (const auto& r : t.rows) {
      if (r.size() != 3) throw ParseError("series rows need 3 columns");
      f.series.emplace_back(static_cast<int>(parse_integer(r[0], "n")),
                            cplx(parse_double(r[1], "real part"), parse_double(r[2], "imaginary part")));
    }
  } else {
    throw ParseError("unknown coefficient kind '" + kind + "'");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Moment tables

inline void write_moments(std::ostream& out, const phasespace::MomentSet& m, Format fmt) {
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "moments";
    j["mean_x"] = m.mean_x;
    j["mean_p"] = m.mean_p;
    j["var_x"] = m.var_x;
    j["var_p"] = m.var_p;
    j["codisp_xp"] = {m.codisp_xp.real(), m.codisp_xp.imag()};
    j["codisp_px"] = {m.codisp_px.real(), m.codisp_px.imag()};
    j["uncertainty_product"] = m.uncertainty_product();
    j["normalized"] = m.meta.normalized;
    j["warnings"] = m.meta.warnings;
    out << j.dump(1) << '\n';
    return;
  }
  out << "# kind=moments\n";
  out << "# normalized=" << (m.meta.normalized ? "true" : "false") << '\n';
  out << "# warnings=" << join_warnings(m.meta.warnings) << '\n';
  out << "# columns=quantity,re,im\n";
  auto row = [&](const char* k, cplx v) {
    out << k << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  };
  row("mean_x", m.mean_x);
  row("mean_p", m.mean_p);
  row("var_x", m.var_x);
  row("var_p", m.var_p);
  row("codisp_xp", m.codisp_xp);
  row("codisp_px", m.codisp_px);
  row("uncertainty_product", m.uncertainty_product());
}

}  // namespace lctkit::io

#endif  // LCTKIT_IO_HPP
