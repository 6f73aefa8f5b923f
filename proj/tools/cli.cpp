#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sshrabi/band.hpp"
#include "sshrabi/errors.hpp"
#include "sshrabi/ground_state.hpp"
#include "sshrabi/rabi.hpp"
#include "sshrabi/spectra.hpp"
#include "sshrabi/stability.hpp"
#include "sshrabi/table_writer.hpp"

namespace sshrabi::cli {
namespace {

using json = nlohmann::ordered_json;

const std::map<std::string, std::string> kChainDefaults = {
    {"t0", "2.5"}, {"alpha", "4.1"}, {"K", "21"}, {"a", "1.22"}, {"N", "100"},
};

KeyValueConfig from_map(const std::map<std::string, std::string>& m) {
  KeyValueConfig c;
  for (const auto& [k, v] : m) c.set(k, v);
  return c;
}

std::map<std::string, std::string> with_chain(std::map<std::string, std::string> extra) {
  extra.insert(kChainDefaults.begin(), kChainDefaults.end());
  return extra;
}

ChainParams chain_from(const KeyValueConfig& c) {
  ChainParams p;
  p.t0 = c.get_double("t0");
  p.alpha = c.get_double("alpha");
  p.K = c.get_double("K");
  p.a = c.get_double("a");
  p.N = c.get_long("N");
  if (c.contains("u")) p.u = c.get_double("u");
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return p;
}

std::vector<Branch> branches_from(const KeyValueConfig& c) {
  const std::string b = c.get_string("branch");
  if (b == "both") return {Branch::UpperSign, Branch::LowerSignSSH};
  try {
    return {parse_branch(b)};
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::size_t positive_count(const KeyValueConfig& c, const char* key, long minimum) {
  const long v = c.get_long(key);
  if (v < minimum) throw ParseError(std::string("key '") + key + "' must be >= " + std::to_string(minimum));
  return static_cast<std::size_t>(v);
}

class Artifacts {
 public:
  Artifacts(std::filesystem::path dir, OutputFormat fmt) : dir_(std::move(dir)), fmt_(fmt) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ParseError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  OutputFormat format() const { return fmt_; }
  std::string ext() const { return fmt_ == OutputFormat::Json ? ".json" : ".csv"; }

  void write(const std::string& name, const std::string& content) {
    write_file_atomically(dir_ / name, content);
    written_.push_back(name);
  }

  json list() const { return written_; }

 private:
  std::filesystem::path dir_;
  OutputFormat fmt_;
  std::vector<std::string> written_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- band

json run_band(const KeyValueConfig& c, Artifacts& art) {
  const ChainParams p = chain_from(c);
  const auto branches = branches_from(c);
  const auto grid = reduced_zone_grid(p, positive_count(c, "grid_points", 2));

  std::ostringstream csv_text;
  CsvWriter csv(csv_text, {"k[1/A]", "branch", "eps[eV]", "gap[eV]", "E[eV]", "alpha_k", "beta_k", "E_c[eV]",
                           "E_v[eV]"});
  json rows = json::array();
  std::size_t degenerate = 0;
  for (Branch b : branches) {
    for (double k : grid) {
      BandSample s;
      QuasiparticleLevels lv;
      try {
        s = band_sample(p, k, b);
        lv = quasiparticle_energy(p, k, b);
      } catch (const DegeneratePointError&) {
        ++degenerate;
        continue;
      }
      if (art.format() == OutputFormat::Csv) {
        csv.row(k, to_string(b), s.eps, s.gap, s.E, s.alpha_k, s.beta_k, lv.conduction, lv.valence);
      } else {
        rows.push_back({{"k[1/A]", k}, {"branch", to_string(b)}, {"eps[eV]", s.eps}, {"gap[eV]", s.gap},
                        {"E[eV]", s.E}, {"alpha_k", s.alpha_k}, {"beta_k", s.beta_k},
                        {"E_c[eV]", lv.conduction}, {"E_v[eV]", lv.valence}});
      }
    }
  }
  art.write("band" + art.ext(), art.format() == OutputFormat::Csv ? csv_text.str() : dump(rows));
  return {{"grid_points", grid.size()}, {"degenerate_points", degenerate}};
}

// ---------------------------------------------------------------- stability

json run_stability(const KeyValueConfig& c, Artifacts& art) {
  const ChainParams p = chain_from(c);
  const auto branches = branches_from(c);
  const auto grid = reduced_zone_grid(p, positive_count(c, "grid_points", 2));
  const std::string occ_name = c.get_string("occupation");
  OccupationState occ;
  if (occ_name == "equilibrium") {
    occ = OccupationState::equilibrium();
  } else if (occ_name == "inverted") {
    occ = OccupationState::inverted();
  } else {
    throw ParseError("key 'occupation' must be equilibrium or inverted");
  }

  std::ostringstream csv_text;
  json rows = json::array();
  json per_branch = json::object();
  bool header_written = false;
  for (Branch b : branches) {
    const StabilityScan scan = stability_scan(p, occ, b, grid);
    if (art.format() == OutputFormat::Csv) {
      std::ostringstream part;
      write_scan_csv(part, scan);
      std::string text = part.str();
      if (header_written) text = text.substr(text.find('\n') + 1);
      header_written = true;
      csv_text << text;
    } else {
      for (const auto& r : scan.reports) {
        rows.push_back({{"k[1/A]", r.k}, {"branch", to_string(r.branch)}, {"cond1", r.cond1}, {"cond2", r.cond2},
                        {"cond3", r.cond3}, {"all_satisfied", r.all_satisfied},
                        {"population_sign", r.population_sign},
                        {"error", r.error ? json(*r.error) : json(nullptr)}});
      }
    }
    per_branch[std::string(to_string(b))] = {{"satisfied_points", scan.satisfied_count},
                                             {"error_points", scan.error_count},
                                             {"all_k_satisfied", scan.all_k_satisfied}};
  }
  art.write("stability" + art.ext(), art.format() == OutputFormat::Csv ? csv_text.str() : dump(rows));
  return {{"occupation", occ_name}, {"grid_points", grid.size()}, {"branches", per_branch}};
}

// ---------------------------------------------------------------- ground-state

json run_ground_state(const KeyValueConfig& c, Artifacts& art, std::ostream& err, int verbosity) {
  const ChainParams p = chain_from(c);
  MinimizeOptions opts;
  opts.tolerance = c.get_double("tolerance");
  opts.z_max = c.get_double("z_max");
  QuadratureOptions quad;
  quad.relative_tolerance = c.get_double("quad_tolerance");

  const GroundStateResult r = minimize_dimerization(p, opts);
  if (verbosity > 0) err << "ground-state: u0 = " << r.u0 << " A after " << r.iterations << " iterations\n";
  const double quad_at_min = energy_quadrature(p.with_u(r.u0), quad);

  json result;
  result["u0[A]"] = r.u0;
  result["E_min[eV]"] = r.E_min;
  result["E_at_zero[eV]"] = r.E_at_zero;
  result["z0"] = r.z0;
  result["well_depth[eV]"] = r.well_depth;
  result["dimerized"] = r.dimerized;
  result["u_max[A]"] = r.u_max;
  result["E_min_quadrature[eV]"] = quad_at_min;
  result["iterations"] = r.iterations;
  art.write("ground_state.json", dump(result));

  const auto profile = well_profile(p, r.u_max, positive_count(c, "profile_points", 2));
  if (art.format() == OutputFormat::Csv) {
    std::ostringstream text;
    CsvWriter csv(text, {"u[A]", "E[eV]"});
    for (const auto& w : profile) csv.row(w.u, w.energy);
    art.write("well_profile.csv", text.str());
  } else {
    json rows = json::array();
    for (const auto& w : profile) rows.push_back({{"u[A]", w.u}, {"E[eV]", w.energy}});
    art.write("well_profile.json", dump(rows));
  }
  return {{"u0[A]", r.u0}, {"well_depth[eV]", r.well_depth}, {"dimerized", r.dimerized}};
}

// ---------------------------------------------------------------- rabi

TubeConfig tube_from(const KeyValueConfig& c) {
  TubeConfig cfg;
  cfg.n = positive_count(c, "chains", 1);
  cfg.g = c.get_double("g");
  const long l = c.get_long("l");
  if (l < 1) throw ParseError("key 'l' must be >= 1");
  cfg.l = static_cast<unsigned>(l);
  cfg.grid.points = positive_count(c, "grid_points", 2);
  cfg.grid.h_min = c.get_double("h_min");
  cfg.grid.h_max = c.get_double("h_max");

  const double spacing = c.get_double("spacing");
  const std::string theta = c.get_string("theta_profile");
  if (theta == "cosine") {
    cfg.theta = cosine_dispersion(c.get_double("omega0"), c.get_double("hopping"), spacing,
                                  c.get_double("theta_interchain"));
  } else if (theta == "linear") {
    cfg.theta = linear_dispersion(c.get_double("omega0"), c.get_double("velocity"), c.get_double("theta_interchain"));
  } else {
    throw ParseError("key 'theta_profile' must be cosine or linear");
  }
  const std::string kappa = c.get_string("kappa_profile");
  if (kappa == "constant") {
    cfg.kappa = constant_coupling(1.0, c.get_double("kappa_interchain"));
  } else if (kappa == "cosine") {
    cfg.kappa = cosine_coupling(c.get_double("kappa_modulation"), spacing, c.get_double("kappa_interchain"));
  } else {
    throw ParseError("key 'kappa_profile' must be constant or cosine");
  }
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return cfg;
}

json run_rabi(const KeyValueConfig& c, Artifacts& art, std::ostream& err, int verbosity) {
  const TubeConfig cfg = tube_from(c);
  const double sample_rate = c.get_double("sample_rate");
  const double duration = c.get_double("duration");
  if (!(sample_rate > 0.0) || !(duration > 0.0)) throw ParseError("sample_rate and duration must be > 0");
  const auto samples = static_cast<std::size_t>(std::llround(duration * sample_rate));
  if (samples < 2) throw ParseError("duration * sample_rate must give at least 2 samples");

  std::optional<std::size_t> chain;
  const std::string chain_key = c.get_string("envelope_chain");
  if (chain_key != "all") {
    const long ch = c.get_long("envelope_chain");
    if (ch < 0 || static_cast<std::size_t>(ch) >= cfg.n) throw ParseError("envelope_chain out of range");
    chain = static_cast<std::size_t>(ch);
  }
  const double centre = c.get_double("envelope_centre");
  const double width = c.get_double("envelope_width");
  if (!(width > 0.0)) throw ParseError("envelope_width must be > 0");

  const Propagator prop(cfg);
  SpectrumOptions sopts;
  sopts.relative_threshold = c.get_double("spectrum_threshold");
  sopts.max_signal_frequency = prop.max_inversion_frequency();
  if (sample_rate < 2.0 * sopts.max_signal_frequency) {
    std::ostringstream msg;
    msg << "sample_rate " << sample_rate << " Hz is below twice the fastest inversion beat "
        << sopts.max_signal_frequency << " Hz";
    throw AliasingError(msg.str());
  }

  PacketState state = normalized(build_initial_packet(cfg, gaussian_envelope(centre, width, chain)));
  if (verbosity > 0) err << "rabi: " << samples << " samples, " << cfg.n << " chains, " << cfg.grid.points << " h points\n";
  const InversionTrajectory traj = record_inversion(state, prop, 1.0 / sample_rate, samples);
  const Spectrum spec = revival_spectrum(traj.total, sample_rate, sopts);

  std::vector<std::string> header{"t[s]", "inversion_total"};
  for (std::size_t p = 0; p < cfg.n; ++p) header.push_back("inversion_chain_" + std::to_string(p));

  if (art.format() == OutputFormat::Csv) {
    std::ostringstream text;
    CsvWriter csv(text, header);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      std::vector<double> row{traj.times[k], traj.total[k]};
      for (std::size_t p = 0; p < cfg.n; ++p) row.push_back(traj.chains[p][k]);
      csv.row_values(row);
    }
    art.write("inversion.csv", text.str());
    std::ostringstream stext;
    CsvWriter scsv(stext, {"frequency[Hz]", "magnitude"});
    for (std::size_t k = 0; k < spec.frequency.size(); ++k) scsv.row(spec.frequency[k], spec.magnitude[k]);
    art.write("spectrum.csv", stext.str());
  } else {
    json rows = json::array();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      json row;
      row["t[s]"] = traj.times[k];
      row["inversion_total"] = traj.total[k];
      for (std::size_t p = 0; p < cfg.n; ++p) row[header[p + 2]] = traj.chains[p][k];
      rows.push_back(std::move(row));
    }
    art.write("inversion.json", dump(rows));
    json srows = json::array();
    for (std::size_t k = 0; k < spec.frequency.size(); ++k) {
      srows.push_back({{"frequency[Hz]", spec.frequency[k]}, {"magnitude", spec.magnitude[k]}});
    }
    art.write("spectrum.json", dump(srows));
  }

  json peaks = json::array();
  for (const auto& pk : spec.peaks) peaks.push_back({{"frequency[Hz]", pk.refined_frequency}, {"magnitude", pk.magnitude}});
  json summary;
  summary["samples"] = samples;
  summary["resolution[Hz]"] = spec.resolution;
  summary["rabi_frequency_centre[Hz]"] =
      2.0 * cfg.field_coupling() * cfg.kappa(0, cfg.n, centre).real() / (2.0 * std::numbers::pi);
  const auto dom = dominant_peak(spec);
  summary["dominant_peak[Hz]"] = dom ? json(dom->refined_frequency) : json(nullptr);
  summary["peaks"] = peaks;
  return summary;
}

// ---------------------------------------------------------------- spectra-check

json run_spectra_check(const KeyValueConfig& c, Artifacts& art, bool& all_passed) {
  const std::filesystem::path path = c.get_string("fixtures");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open fixture file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto tables = parse_fixtures(text);
  for (const auto& t : tables) t.validate();
  const RegularityReport rep = run_regularity_checks(tables, fixture_checksum(text));
  art.write("spectra_report.json", report_to_json(rep));
  if (art.format() == OutputFormat::Csv) art.write("spectra_report.csv", report_to_csv(rep));
  all_passed = rep.all_passed;
  std::size_t failed = 0;
  for (const auto& chk : rep.checks) failed += chk.passed && !*chk.passed;
  return {{"tables", tables.size()}, {"checks", rep.checks.size()}, {"failed", failed}, {"all_passed", rep.all_passed}};
}

std::set<std::string> keys_of(const KeyValueConfig& c) {
  std::set<std::string> out;
  for (const auto& [k, v] : c.entries()) out.insert(k);
  return out;
}

}  // namespace

bool is_command(const std::string& name) {
  return name == "band" || name == "stability" || name == "ground-state" || name == "rabi" ||
         name == "spectra-check";
}

KeyValueConfig default_parameters(const std::string& command) {
  if (command == "band") {
    return from_map(with_chain({{"u", "0.05"}, {"branch", "both"}, {"grid_points", "2048"}}));
  }
  if (command == "stability") {
    return from_map(
        with_chain({{"u", "0.05"}, {"branch", "both"}, {"grid_points", "2048"}, {"occupation", "equilibrium"}}));
  }
  if (command == "ground-state") {
    return from_map(with_chain(
        {{"tolerance", "1e-8"}, {"z_max", "0.9"}, {"quad_tolerance", "1e-10"}, {"profile_points", "401"}}));
  }
  if (command == "rabi") {
    return from_map({{"chains", "4"},
                     {"g", "3.141592653589793"},
                     {"l", "2"},
                     {"grid_points", "4096"},
                     {"h_min", "-16"},
                     {"h_max", "16"},
                     {"theta_profile", "cosine"},
                     {"omega0", "0"},
                     {"hopping", "1"},
                     {"velocity", "1"},
                     {"spacing", "1"},
                     {"theta_interchain", "0.5"},
                     {"kappa_profile", "cosine"},
                     {"kappa_modulation", "0.1"},
                     {"kappa_interchain", "0"},
                     {"envelope_centre", "0.5"},
                     {"envelope_width", "0.25"},
                     {"envelope_chain", "0"},
                     {"sample_rate", "32"},
                     {"duration", "64"},
                     {"spectrum_threshold", "0.05"}});
  }
  if (command == "spectra-check") {
    return from_map({{"fixtures", default_fixture_path().string()}});
  }
  throw ParseError("unknown command '" + command + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!is_command(config.command)) throw ParseError("unknown command '" + config.command + "'");
    const KeyValueConfig defaults = default_parameters(config.command);
    KeyValueConfig params = defaults;
    if (config.params) {
      const KeyValueConfig user = KeyValueConfig::load(*config.params);
      user.require_known(keys_of(defaults));
      params = user.merged_over(defaults);
    } else if (!config.print_config) {
      throw ParseError("--params <file> is required");
    }
    if (config.print_config) {
      out << "# " << config.command << " parameters\n" << params.dump();
      return kSuccess;
    }

    Artifacts art(config.out_dir, config.format);
    json summary;
    summary["command"] = config.command;
    summary["status"] = "ok";
    bool checks_passed = true;
    json detail;
    if (config.command == "band") {
      detail = run_band(params, art);
    } else if (config.command == "stability") {
      detail = run_stability(params, art);
    } else if (config.command == "ground-state") {
      detail = run_ground_state(params, art, err, config.verbosity);
    } else if (config.command == "rabi") {
      detail = run_rabi(params, art, err, config.verbosity);
    } else {
      detail = run_spectra_check(params, art, checks_passed);
      if (!checks_passed) summary["status"] = "checks-failed";
    }
    summary["artifacts"] = art.list();
    summary["result"] = std::move(detail);
    out << summary.dump() << '\n';
    return checks_passed ? kSuccess : kChecksFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ModelConsistencyError& e) {
    err << "error: model consistency: " << e.what() << '\n';
    return kModelConsistency;
  } catch (const NumericalFailure& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NormalizationError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace sshrabi::cli
