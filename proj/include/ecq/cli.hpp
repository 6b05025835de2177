// Copyright 2026 The ecq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Every command renders its table into memory first;
// main_entry() then writes it atomically and, for file outputs, a manifest
// recording the exact argument vector and a SHA-256 of the bytes written so a
// run can be replayed and checked for byte identity.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ecq/asymptotics.hpp"
#include "ecq/bounds.hpp"
#include "ecq/errors.hpp"
#include "ecq/lattice.hpp"
#include "ecq/quantizer.hpp"
#include "ecq/sources.hpp"

namespace ecq::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kNonconvergence = 3 };

// Shortest round-trip decimal; identical bytes for identical doubles.
inline std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

// A table rendered either as CSV (header + rows) or as a JSON array of
// objects. Cells are kept as text so both renderings carry the same digits;
// empty cells become JSON null.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) {
    require(row.size() == header_.size(), "table row width mismatch");
    rows_.push_back(std::move(row));
  }

  std::string render(std::string_view format) const {
    if (format == "json") {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < header_.size(); ++i) {
          const auto& cell = row[i];
          if (cell.empty()) {
            obj[header_[i]] = nullptr;
            continue;
          }
          double v = 0.0;
          auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
          if (res.ec == std::errc{} && res.ptr == cell.data() + cell.size())
            obj[header_[i]] = v;
          else
            obj[header_[i]] = cell;
        }
        arr.push_back(std::move(obj));
      }
      return arr.dump(2) + "\n";
    }
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header_);
    for (const auto& row : rows_) line(row);
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct CommandResult {
  std::string text;
  int exit_code = kOk;
  std::string warnings;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string out_path;
};

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = text.find(sep);
    out.emplace_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

// Comma-separated dimensions and ranges, e.g. "1..24" or "1,2,8..10".
inline std::vector<std::size_t> parse_dims(std::string_view text) {
  std::vector<std::size_t> dims;
  auto to_dim = [](std::string_view t) {
    const double v = ecq::detail::parse_double(t, "dimension");
    if (v < 1 || v > 4096 || v != std::floor(v)) throw ValidationError("dimensions must be integers in [1, 4096]");
    return static_cast<std::size_t>(v);
  };
  for (const auto& part : split(text, ',')) {
    const std::string_view p = part;
    if (const auto dots = p.find(".."); dots != std::string_view::npos) {
      const auto a = to_dim(p.substr(0, dots));
      const auto b = to_dim(p.substr(dots + 2));
      if (b < a) throw ValidationError("dimension range must be increasing");
      for (auto d = a; d <= b; ++d) dims.push_back(d);
    } else {
      dims.push_back(to_dim(p));
    }
  }
  return dims;
}

inline QuantizerFamily parse_family(std::string_view text, double offset) {
  QuantizerFamily fam;
  fam.offset = offset;
  if (text == "uniform") return fam;
  if (text.starts_with("pattern:")) {
    fam.pattern = ecq::detail::parse_list(text.substr(8), "pattern");
    for (double p : fam.pattern) require(p > 0.0, "pattern entries must be positive");
    return fam;
  }
  throw ValidationError("unknown quantizer family '" + std::string(text) + "' (uniform | pattern:a,b,...)");
}

inline ConcentrationVariant parse_variant(std::string_view text) {
  if (text == "theorem2_lambda" || text == "lambda") return ConcentrationVariant::kWindowLambda;
  if (text == "corollary_delta" || text == "delta") return ConcentrationVariant::kCellDelta;
  throw ValidationError("unknown variant '" + std::string(text) + "' (theorem2_lambda | corollary_delta)");
}

// Lattices that appear in published second-moment tables but have no decoder
// here; requesting them yields rows with blank lattice columns.
struct KnownUndecodable {
  std::string_view name;
  std::size_t dim;
};
inline constexpr KnownUndecodable kUndecodable[] = {
    {"E6star", 6}, {"E7star", 7}, {"K12", 12}, {"BW16", 16}, {"Leech", 24}};

// Dimensionless second moment G of a lattice: closed form where one is known
// (Z^d, A1, A2), otherwise Monte Carlo. Returns {G, std_err, source}.
struct MomentRow {
  double G = 0.0;
  double std_err = 0.0;
  std::string source;
};

inline MomentRow lattice_G(const Lattice& lat, std::size_t samples, std::uint64_t seed) {
  if (lat.family() == LatticeFamily::kZn || (lat.family() == LatticeFamily::kAn && lat.dimension() == 1))
    return {1.0 / 12.0, 0.0, "analytic"};
  if (lat.family() == LatticeFamily::kAn && lat.dimension() == 2) return {hexagonal_G(), 0.0, "analytic"};
  const auto est = normalized_moment_mc(lat, 2.0, samples, seed);
  return {est.per_dim_G, est.std_error / static_cast<double>(lat.dimension()), "mc"};
}

}  // namespace detail

struct Common {
  std::uint64_t seed = 1;
  std::size_t samples = 200'000;
  std::string out;
  std::string format = "csv";
};

inline CommandResult cmd_figure1(const std::vector<std::size_t>& dims, const std::vector<std::string>& lattices,
                                 const Common& c) {
  Table t({"d", "lb_bits_per_dim", "zador_ub_bits_per_dim", "lattice", "lattice_ub_bits_per_dim", "moment_source",
           "moment_std_err"});
  CommandResult res;
  for (const auto& name : lattices) {
    const bool decodable = name == "Z" || name == "D" || name == "Dstar" || name == "A" || name == "E8";
    const bool known = std::any_of(std::begin(detail::kUndecodable), std::end(detail::kUndecodable),
                                   [&](const auto& k) { return k.name == name; });
    if (!decodable && !known) throw ValidationError("unknown lattice family '" + name + "'");
    if (known) res.warnings += "warning: no decoder for lattice " + name + "; its columns are left blank\n";
  }
  for (std::size_t d : dims) {
    const double dd = static_cast<double>(d);
    const std::string lb = num(bounds::to_bits(bounds::excess_rate_lb_per_dim_quadratic(dd)));
    const std::string zub = num(bounds::to_bits(bounds::zador_rc_ub_per_dim(dd)));
    bool any = false;
    for (std::size_t li = 0; li < lattices.size(); ++li) {
      const auto& name = lattices[li];
      for (const auto& k : detail::kUndecodable) {
        if (k.name == name && k.dim == d) {
          t.add({std::to_string(d), lb, zub, name, "", "", ""});
          any = true;
        }
      }
      if (name == "E8" && d != 8) continue;
      if ((name == "D" || name == "Dstar") && d < 2) continue;
      if (name != "Z" && name != "D" && name != "Dstar" && name != "A" && name != "E8") continue;
      const Lattice lat = name == "E8" ? Lattice::E8() : parse_lattice(name + ":" + std::to_string(d));
      const auto m = detail::lattice_G(lat, c.samples, CounterRng(c.seed).bits(d, li));
      // cube cells attain the scalar bound; use the same expression so the
      // row compares equal to the d=1 lower bound
      const double ub = m.source == "analytic" && m.G == 1.0 / 12.0 ? bounds::excess_rate_lb_per_dim_quadratic(1.0)
                                                                    : bounds::lattice_excess_per_dim(m.G);
      t.add({std::to_string(d), lb, zub, lat.name(), num(bounds::to_bits(ub)), m.source, num(m.std_err)});
      any = true;
    }
    if (!any) t.add({std::to_string(d), lb, zub, "", "", "", ""});
  }
  res.text = t.render(c.format);
  return res;
}

inline CommandResult cmd_excess(const SourceModel& source, double r, const std::vector<double>& Ds,
                                const QuantizerFamily& family, const Common& c) {
  Table t({"D", "achieved_D", "entropy_nats", "reference_nats", "excess_bits"});
  const auto curve = excess_rate_curve(source, r, Ds, family);
  for (const auto& p : curve.points)
    t.add({num(p.D), num(p.achieved_D), num(p.entropy), num(p.reference_rate), num(p.excess_bits())});
  CommandResult res;
  res.text = t.render(c.format);
  if (curve.partial) {
    res.exit_code = kNonconvergence;
    res.warnings = "error: " + curve.error + " (partial results written)\n";
  }
  return res;
}

inline CommandResult cmd_concentration(const SourceModel& source, double r, const std::vector<double>& Ds, double rho,
                                       double theta, const QuantizerFamily& family, ConcentrationVariant variant,
                                       const Common& c) {
  require(source.is_scalar(), "concentration: scalar sources only");
  Table t({"D", "rho", "theta", "variant", "mass", "tail_mass"});
  CommandResult res;
  for (double D : Ds) {
    require(D > 0.0, "concentration: D values must be positive");
    std::optional<Calibration> cal;
    try {
      cal = calibrate_family(family, source.scalar(), r, D);
    } catch (const NonconvergenceError& e) {
      res.exit_code = kNonconvergence;
      res.warnings = std::string("error: ") + e.what() + " (partial results written)\n";
      break;
    }
    const auto stat = concentration_statistic(cal->quantizer, source.scalar(), r, cal->achieved_distortion, rho, theta,
                                              variant, false);
    t.add({num(D), num(rho), num(theta), std::string(variant_name(variant)), num(stat.mass), num(stat.tail_mass)});
  }
  res.text = t.render(c.format);
  return res;
}

inline CommandResult cmd_lattice_decode(const Lattice& lat, std::string_view point) {
  const auto x = ecq::detail::parse_list(point, "point");
  const auto dec = lat.decode(x);
  std::string out;
  for (std::size_t i = 0; i < dec.point.size(); ++i) out += (i ? "," : "") + num(dec.point[i]);
  CommandResult res;
  res.text = out + "\n";
  if (dec.projected) res.warnings = "warning: input projected onto the sum-zero hyperplane\n";
  return res;
}

inline CommandResult cmd_lattice_moment(const Lattice& lat, double r, const Common& c) {
  const auto est = normalized_moment_mc(lat, r, c.samples, c.seed);
  Table t({"lattice", "d", "r", "ell", "per_dim_G", "std_error", "n_samples", "seed"});
  t.add({lat.name(), std::to_string(lat.dimension()), num(r), num(est.ell), num(est.per_dim_G), num(est.std_error),
         std::to_string(est.n_samples), std::to_string(est.seed)});
  CommandResult res;
  res.text = t.render(c.format);
  return res;
}

inline nlohmann::ordered_json report_json(const QuantizerReport& rep) {
  nlohmann::ordered_json j;
  j["distortion"] = rep.distortion;
  j["distortion_err"] = rep.distortion_err;
  j["entropy_nats"] = rep.entropy_nats;
  j["entropy_err"] = rep.entropy_err;
  j["r"] = rep.r;
  j["method"] = rep.method;
  j["n"] = rep.n;
  j["seed"] = rep.seed;
  if (rep.method == "mc") {
    j["miller_madow_nats"] = rep.miller_madow;
    j["unreliable"] = rep.unreliable;
  }
  return j;
}

// `uniform:Δ[,offset]`, `pattern:a,b,...@Δ`, `lattice:NAME@α`.
inline CommandResult cmd_evaluate(std::string_view quantizer, const SourceModel& source, double r,
                                  std::string_view mode, const Common& c) {
  QuantizerReport rep;
  const bool mc = mode == "mc";
  require(mode == "mc" || mode == "exact", "mode must be exact or mc");
  if (quantizer.starts_with("lattice:")) {
    const auto spec = quantizer.substr(8);
    const auto at = spec.find('@');
    const double scale = at == std::string_view::npos ? 1.0 : ecq::detail::parse_double(spec.substr(at + 1), "scale");
    const LatticeQuantizer q(parse_lattice(spec.substr(0, at), scale));
    require(mc, "lattice quantizers are evaluated with --mode mc");
    rep = evaluate(q, source, r, MonteCarlo{c.samples, c.seed});
  } else {
    require(source.is_scalar(), "scalar quantizers need a scalar source");
    const auto& s = source.scalar();
    ScalarQuantizer q = [&] {
      if (quantizer.starts_with("uniform:")) {
        const auto p = ecq::detail::parse_list(quantizer.substr(8), "uniform quantizer");
        require(p.size() == 1 || p.size() == 2, "uniform quantizer: expected step[,offset]");
        return ScalarQuantizer::uniform_for(s, p[0], p.size() == 2 ? p[1] : 0.0);
      }
      if (quantizer.starts_with("pattern:")) {
        const auto spec = quantizer.substr(8);
        const auto at = spec.find('@');
        require(at != std::string_view::npos, "pattern quantizer: expected pattern:a,b@step");
        const auto pat = ecq::detail::parse_list(spec.substr(0, at), "pattern");
        return make_almost_regular(pat, ecq::detail::parse_double(spec.substr(at + 1), "step"), s);
      }
      throw ValidationError("unknown quantizer '" + std::string(quantizer) + "'");
    }();
    rep = mc ? evaluate(q, source, r, MonteCarlo{c.samples, c.seed}) : evaluate(q, source, r, ExactScalar{});
  }
  CommandResult res;
  res.text = report_json(rep).dump(2) + "\n";
  return res;
}

// Parses and runs one invocation (argument vector without the program name),
// returning the rendered output without touching the filesystem.
inline CommandResult execute(const std::vector<std::string>& args) {
  CLI::App app{"High-resolution entropy-constrained quantization toolkit", "ecq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common c;
  const char* env_seed = std::getenv("ECQ_SEED");
  if (env_seed != nullptr && *env_seed != '\0') {
    try {
      c.seed = std::stoull(env_seed);
    } catch (const std::exception&) {
      throw ValidationError("ECQ_SEED must be an unsigned integer");
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "RNG seed (default from ECQ_SEED, else 1)");
    sub->add_option("--samples", c.samples, "Monte Carlo sample count");
    sub->add_option("--out", c.out, "Write output to this file (plus <file>.manifest.json)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  CommandResult result;
  bool ran = false;
  std::string source_text = "gaussian:0,1", family_text = "uniform", d_text = "1e-2,1e-3,1e-4,1e-5";
  double r = 2.0, offset = 0.0, rho = 10.0, theta = 0.5, scale = 1.0;

  auto* fig = app.add_subcommand("figure1", "Per-dimension excess-rate bounds and lattice upper bounds");
  std::string dims_text = "1..24", lattices_text = "Z,A,Dstar,E8";
  fig->add_option("--dims", dims_text, "Dimension range a..b or list");
  fig->add_option("--lattices", lattices_text, "Lattice families: Z,D,Dstar,A,E8");
  add_common(fig);

  auto* exc = app.add_subcommand("excess", "Excess rate of calibrated scalar quantizers over R(D)");
  exc->add_option("--source", source_text, "Source, e.g. gaussian:0,1");
  exc->add_option("--r", r, "Distortion exponent");
  exc->add_option("--D", d_text, "Comma-separated decreasing distortions");
  exc->add_option("--family", family_text, "uniform or pattern:a,b,...");
  exc->add_option("--offset", offset, "Cell offset");
  add_common(exc);

  auto* con = app.add_subcommand("concentration", "Windowed cell-length concentration statistic");
  std::string variant_text = "theorem2_lambda";
  con->add_option("--source", source_text, "Source, e.g. gaussian:0,1");
  con->add_option("--r", r, "Distortion exponent");
  con->add_option("--D", d_text, "Comma-separated distortions");
  con->add_option("--rho", rho, "Window parameter");
  con->add_option("--theta", theta, "Tolerance");
  con->add_option("--family", family_text, "uniform or pattern:a,b,...");
  con->add_option("--offset", offset, "Cell offset");
  con->add_option("--variant", variant_text, "theorem2_lambda or corollary_delta");
  add_common(con);

  auto* lat = app.add_subcommand("lattice", "Lattice decoding and Voronoi moments");
  lat->require_subcommand(1);
  std::string lattice_name, point_text;
  auto* dec = lat->add_subcommand("decode", "Nearest lattice point");
  dec->add_option("lattice", lattice_name, "Z:d, D:d, Dstar:d, A:d or E8")->required();
  dec->add_option("point", point_text, "Comma-separated coordinates")->required();
  dec->add_option("--scale", scale, "Lattice scale");
  add_common(dec);
  auto* mom = lat->add_subcommand("moment", "Monte Carlo normalized r-th moment of the Voronoi cell");
  mom->add_option("lattice", lattice_name, "Z:d, D:d, Dstar:d, A:d or E8")->required();
  mom->add_option("--r", r, "Moment exponent");
  mom->add_option("--scale", scale, "Lattice scale");
  add_common(mom);

  auto* ev = app.add_subcommand("evaluate", "Distortion and output entropy of one quantizer (JSON)");
  std::string quantizer_text, mode_text = "exact";
  ev->add_option("--quantizer", quantizer_text, "uniform:step[,offset] | pattern:a,b@step | lattice:NAME@scale")
      ->required();
  ev->add_option("--source", source_text, "Source, e.g. gaussian:0,1");
  ev->add_option("--r", r, "Distortion exponent");
  ev->add_option("--mode", mode_text, "exact or mc");
  add_common(ev);

  // Sample defaults differ per subcommand: 2e5 for figure1, 1e6 otherwise.
  c.samples = !args.empty() && (args[0] == "lattice" || args[0] == "evaluate") ? 1'000'000 : 200'000;
  // CLI11 consumes a vector in reverse order
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    result.text = os.str();
    return result;
  } catch (const CLI::CallForVersion&) {
    result.text = std::string(kVersion) + "\n";
    return result;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }
  require(c.samples >= 1, "--samples must be positive");

  if (fig->parsed()) {
    result = cmd_figure1(detail::parse_dims(dims_text), detail::split(lattices_text, ','), c);
    ran = true;
  } else if (exc->parsed()) {
    result = cmd_excess(parse_source(source_text), r, ecq::detail::parse_list(d_text, "--D"),
                        detail::parse_family(family_text, offset), c);
    ran = true;
  } else if (con->parsed()) {
    result = cmd_concentration(parse_source(source_text), r, ecq::detail::parse_list(d_text, "--D"), rho, theta,
                               detail::parse_family(family_text, offset), detail::parse_variant(variant_text), c);
    ran = true;
  } else if (dec->parsed()) {
    result = cmd_lattice_decode(parse_lattice(lattice_name, scale), point_text);
    ran = true;
  } else if (mom->parsed()) {
    result = cmd_lattice_moment(parse_lattice(lattice_name, scale), r, c);
    ran = true;
  } else if (ev->parsed()) {
    result = cmd_evaluate(quantizer_text, parse_source(source_text), r, mode_text, c);
    ran = true;
  }
  if (!ran) throw ValidationError("no command given");
  result.seed = c.seed;
  result.samples = c.samples;
  result.out_path = c.out;
  return result;
}

inline nlohmann::ordered_json make_manifest(const std::vector<std::string>& args, const CommandResult& res,
                                            double wall_seconds) {
  nlohmann::ordered_json m;
  m["command"] = args;
  m["seed"] = res.seed;
  m["samples"] = res.samples;
  m["version"] = std::string(kVersion);
  m["wall_time_s"] = wall_seconds;
  m["outputs"] = nlohmann::ordered_json::array({{{"path", res.out_path}, {"sha256", sha256_hex(res.text)}}});
  return m;
}

inline void write_atomically(const std::filesystem::path& path, std::string_view data) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open " + tmp.string() + " for writing");
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw ValidationError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct ReplayOutcome {
  bool identical = false;
  std::string expected;
  std::string actual;
};

// Re-runs the command recorded in a manifest and compares output checksums.
inline ReplayOutcome replay(const std::filesystem::path& manifest_path) {
  std::ifstream f(manifest_path);
  if (!f) throw ValidationError("cannot read manifest " + manifest_path.string());
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  const auto args = m.at("command").get<std::vector<std::string>>();
  const auto res = execute(args);
  ReplayOutcome out;
  out.expected = m.at("outputs").at(0).at("sha256").get<std::string>();
  out.actual = sha256_hex(res.text);
  out.identical = out.expected == out.actual;
  return out;
}

inline int main_entry(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (!args.empty() && args[0] == "replay") {
      if (args.size() != 2) throw ValidationError("usage: ecq replay <manifest.json>");
      const auto outcome = replay(args[1]);
      out << (outcome.identical ? "identical " : "MISMATCH ") << outcome.actual << "\n";
      return outcome.identical ? kOk : kFailure;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = execute(args);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << res.warnings;
    if (res.out_path.empty()) {
      out << res.text;
    } else {
      write_atomically(res.out_path, res.text);
      write_atomically(res.out_path + ".manifest.json", make_manifest(args, res, wall).dump(2) + "\n");
    }
    return res.exit_code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NonconvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNonconvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ecq::cli
