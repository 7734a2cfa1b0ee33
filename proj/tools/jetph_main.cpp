// Command-line front end: derivation documents, symbolic verification,
// and plate simulation in both first-order forms.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetph/model.hpp"
#include "jetph/sim/run.hpp"

using nlohmann::json;
using namespace jetph;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config:
    case ErrorKind::Parse:
    case ErrorKind::Validation:
      return 2;
    default:
      return 1;
  }
}

// ---------------------------------------------------------------- derive --

Expression strains_to_fields(const StokesDirac& sd, const Expression& e) {
  std::map<Symbol, Expression> bind;
  for (const auto& s : e.symbols()) {
    if (!s.is_jet()) continue;
    for (const auto& v : sd.chi)
      if (v.name == s.field && v.kind == EnergyVariable::Kind::Strain) {
        Expression val = v.provenance;
        for (const auto& d : s.mindex) val = val.total_derivative(d);
        bind.emplace(s, std::move(val));
        break;
      }
  }
  return e.substitute(bind);
}

json lagrangian_document(const FieldModel& m) {
  const ELSystem el = euler_lagrange(m.lagrangian);
  const BoundaryForm bf = boundary_form(m.lagrangian);
  json doc;
  doc["model"] = m.name;
  doc["independent"] = m.chart.indep;
  doc["fields"] = m.chart.dep;
  doc["density"] = m.lagrangian.expr.str();
  json res;
  for (const auto& [dep, r] : el.residuals) res[dep] = r.str();
  doc["residuals"] = res;
  json bnd;
  for (const auto& [dir, per_dep] : bf.coefficients) {
    json entry;
    for (const auto& [dep, c] : per_dep) entry[dep] = c.str();
    bnd[dir] = entry;
  }
  doc["boundary_coefficients"] = bnd;
  json facets = json::array();
  for (const Facet& f : spatial_facets(m.chart)) facets.push_back(f.name());
  doc["facets"] = facets;
  return doc;
}

json geometric_document(const FieldModel& m) {
  auto [mm, geo] = legendre_transform(m.lagrangian);
  const PowerBalanceForm pb = power_balance_form(geo);
  json doc;
  doc["model"] = m.name;
  json states = json::array();
  for (const auto& c : geo.configs) states.push_back(c);
  for (const auto& p : geo.momenta) states.push_back(p);
  doc["states"] = states;
  doc["hamiltonian"] = geo.H.expr.str();
  json jm = json::array();
  for (const auto& row : geo.J) {
    json r = json::array();
    for (const Rational& v : row) r.push_back(v.str());
    jm.push_back(r);
  }
  doc["J"] = jm;
  json rhs;
  for (const auto& [state, e] : geo.rhs) rhs[state] = e.str();
  doc["rhs"] = rhs;
  json momenta;
  for (const auto& [cfg, def] : mm.definition) momenta[MomentumMap::momentum_name(cfg)] = def.str();
  doc["momentum_definitions"] = momenta;
  json power;
  for (const auto& [dir, e] : pb.facet_integrand) power[dir] = e.str();
  doc["facet_power_integrand"] = power;
  return doc;
}

json dirac_document(const FieldModel& m) {
  const StokesDirac sd = m.stokes_dirac();
  json doc;
  doc["model"] = m.name;
  json chi = json::array();
  for (const auto& v : sd.chi) {
    json entry;
    entry["name"] = v.name;
    entry["kind"] = v.kind == EnergyVariable::Kind::Momentum ? "momentum" : "strain";
    entry["provenance"] = v.provenance.str();
    chi.push_back(entry);
  }
  doc["chi"] = chi;
  doc["hamiltonian"] = sd.H.str();
  json eff;
  for (size_t i = 0; i < sd.chi.size(); ++i) eff[sd.chi[i].name] = sd.efforts[i].str();
  doc["efforts"] = eff;
  json jm = json::array();
  for (size_t i = 0; i < sd.chi.size(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < sd.chi.size(); ++j) row.push_back(sd.J.entries[i][j].str());
    jm.push_back(row);
  }
  doc["J"] = jm;
  json rhs;
  for (const auto& [name, e] : sd.rhs) rhs[name] = e.str();
  doc["rhs"] = rhs;
  json power;
  for (const auto& [dir, e] : dirac_power_integrands(sd)) power[dir] = e.str();
  doc["facet_power_integrand"] = power;
  json compat = json::array();
  for (const auto& r : compatibility_residuals(sd)) compat.push_back(r.str());
  doc["compatibility_residuals"] = compat;
  return doc;
}

void print_map(std::ostream& os, const json& obj, const char* indent = "  ") {
  size_t width = 0;
  for (auto it = obj.begin(); it != obj.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    os << indent << it.key() << std::string(width - it.key().size(), ' ') << " : "
       << it.value().get<std::string>() << "\n";
}

void print_document_text(std::ostream& os, const std::string& form, const json& doc) {
  os << "model: " << doc["model"].get<std::string>() << "\n";
  if (form == "lagrangian") {
    os << "density:\n  " << doc["density"].get<std::string>() << "\n";
    os << "field equations (residuals, zero along solutions):\n";
    print_map(os, doc["residuals"]);
    os << "boundary coefficients (outward sign: upper facet +, lower -):\n";
    for (auto it = doc["boundary_coefficients"].begin(); it != doc["boundary_coefficients"].end();
         ++it) {
      os << "  direction " << it.key() << ":\n";
      print_map(os, it.value(), "    ");
    }
  } else if (form == "geometric") {
    os << "states: ";
    for (const auto& s : doc["states"]) os << s.get<std::string>() << " ";
    os << "\nhamiltonian density:\n  " << doc["hamiltonian"].get<std::string>() << "\n";
    os << "momentum definitions:\n";
    print_map(os, doc["momentum_definitions"]);
    os << "J (constant block matrix):\n";
    for (const auto& row : doc["J"]) {
      os << " ";
      for (const auto& v : row) os << " " << v.get<std::string>();
      os << "\n";
    }
    os << "state rates:\n";
    print_map(os, doc["rhs"]);
    os << "facet power integrands:\n";
    print_map(os, doc["facet_power_integrand"]);
  } else {
    os << "energy state:\n";
    for (const auto& v : doc["chi"])
      os << "  " << v["name"].get<std::string>() << " (" << v["kind"].get<std::string>()
         << ") = " << v["provenance"].get<std::string>() << "\n";
    os << "hamiltonian density:\n  " << doc["hamiltonian"].get<std::string>() << "\n";
    os << "efforts:\n";
    print_map(os, doc["efforts"]);
    os << "operator table (rows act on efforts):\n";
    std::vector<std::vector<std::string>> cells;
    size_t width = 0;
    for (const auto& row : doc["J"]) {
      cells.emplace_back();
      for (const auto& v : row) {
        cells.back().push_back(v.get<std::string>());
        width = std::max(width, cells.back().back().size());
      }
    }
    for (const auto& row : cells) {
      os << " ";
      for (const auto& v : row) os << " " << v << std::string(width - v.size(), ' ');
      os << "\n";
    }
    os << "state rates:\n";
    print_map(os, doc["rhs"]);
    os << "facet power integrands:\n";
    print_map(os, doc["facet_power_integrand"]);
    os << "compatibility residuals:\n";
    for (const auto& r : doc["compatibility_residuals"])
      os << "  " << r.get<std::string>() << "\n";
  }
}

int cmd_derive(const std::string& model_ref, const std::string& form, const std::string& format,
               const std::string& out_path) {
  const FieldModel m = load_model(model_ref);
  json doc;
  if (form == "lagrangian") doc = lagrangian_document(m);
  else if (form == "geometric") doc = geometric_document(m);
  else if (form == "dirac") doc = dirac_document(m);
  else fail(ErrorKind::Config, "unknown derive form " + form + " (lagrangian, geometric, dirac)");

  std::ostringstream body;
  if (format == "json") body << doc.dump(2) << "\n";
  else if (format == "text") print_document_text(body, form, doc);
  else fail(ErrorKind::Config, "derive supports --format text or json");

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) fail(ErrorKind::Config, "cannot write " + out_path);
    out << body.str();
  }
  return 0;
}

// ----------------------------------------------------------------- check --

struct CheckResult {
  std::string name;
  enum class Outcome { Pass, Fail, Skip } outcome;
  std::string detail;
};

std::vector<CheckResult> run_checks(const FieldModel& m) {
  std::vector<CheckResult> out;
  auto pass = [&](const std::string& n) { out.push_back({n, CheckResult::Outcome::Pass, {}}); };
  auto failed = [&](const std::string& n, const std::string& d) {
    out.push_back({n, CheckResult::Outcome::Fail, d});
  };
  auto skip = [&](const std::string& n, const std::string& why) {
    out.push_back({n, CheckResult::Outcome::Skip, why});
  };

  const ELSystem el = euler_lagrange(m.lagrangian);
  const BoundaryForm bf = boundary_form(m.lagrangian);

  {
    const std::string name = "momentum form reduces to the field equations";
    try {
      auto [mm, geo] = legendre_transform(m.lagrangian);
      const ELSystem reduced = eliminate_momenta(geo, mm);
      bool ok = true;
      std::string detail;
      for (const auto& dep : m.chart.dep)
        if (!equivalent(reduced.residual(dep), el.residual(dep))) {
          ok = false;
          detail = dep + ": difference " +
                   normalize(reduced.residual(dep) - el.residual(dep)).str();
          break;
        }
      ok ? pass(name) : failed(name, detail);
    } catch (const Error& e) {
      failed(name, e.what());
    }
  }

  if (!m.has_energy_state()) {
    skip("boundary coefficients match the strain efforts", "model declares no energy state");
    skip("energy-variable representation assembles", "model declares no energy state");
    skip("energy form reduces to the field equations", "model declares no energy state");
    skip("operator is formally skew-adjoint", "model declares no energy state");
    skip("boundary power agrees between the forms", "model declares no energy state");
    return out;
  }

  {
    // Each spatial jet coefficient of the density must equal minus the
    // provenance-weighted strain effort: the stress-resultant identities.
    // Driven by the declared potential alone so it runs even when assembly
    // refuses the model.
    const std::string name = "boundary coefficients match the strain efforts";
    try {
      auto to_fields = [&](const Expression& e) {
        std::map<Symbol, Expression> bind;
        for (const auto& s : e.symbols()) {
          if (!s.is_jet()) continue;
          for (const auto& decl : m.strains)
            if (decl.name == s.field) {
              Expression val = decl.provenance;
              for (const auto& d : s.mindex) val = val.total_derivative(d);
              bind.emplace(s, std::move(val));
              break;
            }
        }
        return e.substitute(bind);
      };
      bool ok = true;
      std::string detail;
      for (const auto& dir : m.chart.spatial()) {
        for (const auto& dep : m.chart.dep) {
          Expression sum;
          for (const auto& decl : m.strains) {
            const Expression c = decl.provenance.partial(Symbol::jet(dep, {dir}));
            if (c.is_zero()) continue;
            sum = sum + c * to_fields(m.strain_potential.partial(Symbol::jet(decl.name)));
          }
          const Expression coeff = bf.coefficient(dir, dep);
          if (!equivalent(coeff, -sum)) {
            ok = false;
            detail = "facet direction " + dir + ", field " + dep + ": difference " +
                     normalize(coeff + sum).str();
            break;
          }
        }
        if (!ok) break;
      }
      ok ? pass(name) : failed(name, detail);
    } catch (const Error& e) {
      failed(name, e.what());
    }
  }

  std::optional<StokesDirac> sd;
  {
    const std::string name = "energy-variable representation assembles";
    try {
      sd.emplace(m.stokes_dirac());
      pass(name);
    } catch (const Error& e) {
      failed(name, e.what());
      skip("energy form reduces to the field equations", "assembly failed");
      skip("operator is formally skew-adjoint", "assembly failed");
      skip("boundary power agrees between the forms", "assembly failed");
      return out;
    }
  }

  {
    const std::string name = "energy form reduces to the field equations";
    try {
      const ELSystem reduced = expand_dirac_to_displacement(*sd);
      bool ok = true;
      std::string detail;
      for (const auto& dep : m.chart.dep)
        if (!equivalent(reduced.residual(dep), el.residual(dep))) {
          ok = false;
          detail = dep + ": difference " +
                   normalize(reduced.residual(dep) - el.residual(dep)).str();
          break;
        }
      ok ? pass(name) : failed(name, detail);
    } catch (const Error& e) {
      failed(name, e.what());
    }
  }

  {
    const std::string name = "operator is formally skew-adjoint";
    try {
      formal_adjoint_identity(sd->J);
      pass(name);
    } catch (const Error& e) {
      failed(name, e.what());
    }
  }

  {
    const std::string name = "boundary power agrees between the forms";
    try {
      auto [mm, geo] = legendre_transform(m.lagrangian);
      const PowerBalanceForm pb = power_balance_form(geo);
      const auto dp = dirac_power_integrands(*sd);
      bool ok = true;
      std::string detail;
      for (const auto& dir : m.chart.spatial()) {
        const Expression lhs = strains_to_fields(*sd, dp.count(dir) ? dp.at(dir) : Expression{});
        const Expression rhs =
            pb.facet_integrand.count(dir) ? pb.facet_integrand.at(dir) : Expression{};
        if (!equivalent(lhs, rhs)) {
          ok = false;
          detail = "direction " + dir + ": difference " + normalize(lhs - rhs).str();
          break;
        }
      }
      ok ? pass(name) : failed(name, detail);
    } catch (const Error& e) {
      failed(name, e.what());
    }
  }

  return out;
}

int cmd_check(const std::string& model_ref, const std::string& format) {
  const FieldModel m = load_model(model_ref);
  const std::vector<CheckResult> results = run_checks(m);
  bool all_ok = true;
  for (const auto& r : results)
    if (r.outcome == CheckResult::Outcome::Fail) all_ok = false;

  if (format == "json") {
    json doc;
    doc["model"] = m.name;
    json checks = json::array();
    for (const auto& r : results) {
      json c;
      c["name"] = r.name;
      c["outcome"] = r.outcome == CheckResult::Outcome::Pass   ? "pass"
                     : r.outcome == CheckResult::Outcome::Fail ? "fail"
                                                               : "skip";
      if (!r.detail.empty()) c["detail"] = r.detail;
      checks.push_back(c);
    }
    doc["checks"] = checks;
    doc["ok"] = all_ok;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "model: " << m.name << "\n";
    for (const auto& r : results) {
      const char* tag = r.outcome == CheckResult::Outcome::Pass   ? "pass"
                        : r.outcome == CheckResult::Outcome::Fail ? "FAIL"
                                                                  : "skip";
      std::cout << "  [" << tag << "] " << r.name;
      if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
      std::cout << "\n";
    }
    std::cout << (all_ok ? "all checks passed" : "verification failed") << "\n";
  }
  return all_ok ? 0 : 1;
}

// -------------------------------------------------------------- simulate --

struct SimFlags {
  std::string config_path;
  std::string grid;
  double dt = -1.0;
  long long steps = -1;
  std::string form;
  std::vector<std::string> bc;
  std::string out_dir = "out";
  std::string format = "text";
  int record_every = 0;
  int snapshot_every = -1;
  bool force_dt = false;
  std::string backend;
};

sim::SimConfig build_sim_config(const SimFlags& f) {
  sim::SimConfig cfg;
  if (!f.config_path.empty()) cfg = sim::load_sim_config(f.config_path);
  if (!f.grid.empty()) {
    const auto comma = f.grid.find(',');
    try {
      if (comma == std::string::npos) {
        cfg.nx = cfg.ny = std::stoi(f.grid);
      } else {
        cfg.nx = std::stoi(f.grid.substr(0, comma));
        cfg.ny = std::stoi(f.grid.substr(comma + 1));
      }
    } catch (const std::exception&) {
      fail(ErrorKind::Config, "bad --grid value " + f.grid + " (expected NX,NY)");
    }
  }
  if (f.dt >= 0.0) cfg.dt = f.dt;
  if (f.steps >= 0) cfg.steps = f.steps;
  if (!f.form.empty()) {
    if (f.form == "geometric") cfg.form = sim::Form::Geometric;
    else if (f.form == "dirac") cfg.form = sim::Form::Dirac;
    else if (f.form == "both") cfg.form = sim::Form::Both;
    else fail(ErrorKind::Config, "unknown form " + f.form + " (geometric, dirac, both)");
  }
  for (const std::string& spec : f.bc) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Config, "bad --bc value " + spec + " (expected FACET=TYPE)");
    const std::string facet = spec.substr(0, eq), type = spec.substr(eq + 1);
    const int idx = sim::PlateBC::facet_index(facet);
    if (type == "clamped") cfg.bc[idx] = sim::FacetBC::clamped();
    else if (type == "free") cfg.bc[idx] = sim::FacetBC::free();
    else
      fail(ErrorKind::Config,
           "--bc supports clamped and free; forced facets need signal data in the config file");
  }
  if (f.record_every > 0) cfg.record_every = f.record_every;
  if (f.snapshot_every >= 0) cfg.snapshot_every = f.snapshot_every;
  if (f.force_dt) cfg.force_dt = true;
  if (!f.backend.empty()) {
    if (f.backend == "serial") cfg.backend = sim::Backend::Serial;
    else if (f.backend == "openmp") cfg.backend = sim::Backend::OpenMP;
    else fail(ErrorKind::Config, "unknown backend " + f.backend + " (serial, openmp)");
  }
  if (cfg.snapshot_every > 0 && cfg.snapshot_dir.empty())
    cfg.snapshot_dir = (std::filesystem::path(f.out_dir) / "snapshots").string();
  return cfg;
}

double max_abs_finite_balance(const sim::TimeSeries& ts) {
  double m = 0.0;
  for (const auto& r : ts.rows)
    if (std::isfinite(r.balance_residual)) m = std::max(m, std::abs(r.balance_residual));
  return m;
}

double max_discrepancy(const sim::TimeSeries& ts) {
  double m = 0.0;
  for (const auto& r : ts.rows) m = std::max(m, r.discrepancy);
  return m;
}

int cmd_simulate(const SimFlags& flags, bool force_both) {
  sim::SimConfig cfg = build_sim_config(flags);
  if (force_both) cfg.form = sim::Form::Both;
  const sim::RunResult res = sim::run(cfg);

  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";

  std::filesystem::create_directories(flags.out_dir);
  const auto write_series = [&](const char* name, const sim::TimeSeries& ts) {
    const auto path = std::filesystem::path(flags.out_dir) / name;
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Config, "cannot write " + path.string());
    sim::write_csv(ts, out);
  };
  if (res.geometric) write_series("geometric.csv", *res.geometric);
  if (res.dirac) write_series("dirac.csv", *res.dirac);

  json summary;
  summary["dt"] = res.dt;
  auto series_summary = [&](const sim::TimeSeries& ts) {
    json s;
    s["records"] = ts.rows.size();
    s["t_final"] = ts.rows.back().t;
    s["H_initial"] = ts.rows.front().energy;
    s["H_final"] = ts.rows.back().energy;
    s["max_abs_balance_residual"] = max_abs_finite_balance(ts);
    if (ts.has_discrepancy) s["max_discrepancy"] = max_discrepancy(ts);
    return s;
  };
  if (res.geometric) summary["geometric"] = series_summary(*res.geometric);
  if (res.dirac) summary["dirac"] = series_summary(*res.dirac);

  bool balance_ok = true;
  if (cfg.balance_tolerance > 0.0) {
    double worst = 0.0;
    if (res.geometric) worst = std::max(worst, max_abs_finite_balance(*res.geometric));
    if (res.dirac) worst = std::max(worst, max_abs_finite_balance(*res.dirac));
    balance_ok = worst <= cfg.balance_tolerance;
    summary["balance_tolerance"] = cfg.balance_tolerance;
    summary["balance_ok"] = balance_ok;
  }

  if (flags.format == "json") {
    std::cout << summary.dump(2) << "\n";
  } else if (flags.format == "csv") {
    sim::write_csv(res.geometric ? *res.geometric : *res.dirac, std::cout);
  } else {
    std::cout << "dt = " << res.dt << "\n";
    auto line = [&](const char* name, const sim::TimeSeries& ts) {
      std::cout << name << ": " << ts.rows.size() << " records to t = " << ts.rows.back().t
                << ", H " << ts.rows.front().energy << " -> " << ts.rows.back().energy
                << ", max |balance residual| = " << max_abs_finite_balance(ts);
      if (ts.has_discrepancy) std::cout << ", max discrepancy = " << max_discrepancy(ts);
      std::cout << "\n";
    };
    if (res.geometric) line("geometric", *res.geometric);
    if (res.dirac) line("dirac", *res.dirac);
    if (cfg.balance_tolerance > 0.0)
      std::cout << "balance tolerance " << cfg.balance_tolerance
                << (balance_ok ? ": satisfied" : ": EXCEEDED") << "\n";
  }
  return balance_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational derivation and structure-preserving simulation of plate models"};
  app.require_subcommand(1);

  std::string model_ref = "mindlin";
  std::string derive_form = "lagrangian";
  std::string doc_format = "text";
  std::string out_path;

  CLI::App* derive = app.add_subcommand("derive", "Print field equations and operator forms");
  derive->add_option("model", model_ref, "Preset name (mindlin, wave1d) or model JSON path");
  derive->add_option("--form", derive_form, "lagrangian | geometric | dirac")
      ->check(CLI::IsMember({"lagrangian", "geometric", "dirac"}));
  derive->add_option("--format", doc_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  derive->add_option("--out", out_path, "Write the document to a file instead of stdout");

  CLI::App* check = app.add_subcommand("check", "Run the symbolic verification suite");
  check->add_option("model", model_ref, "Preset name (mindlin, wave1d) or model JSON path");
  check->add_option("--format", doc_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  SimFlags flags;
  auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("config", flags.config_path, "Run configuration JSON");
    cmd->add_option("--grid", flags.grid, "Cells per direction, NX,NY");
    cmd->add_option("--dt", flags.dt, "Time step (default: stability-based)");
    cmd->add_option("--steps", flags.steps, "Number of steps");
    cmd->add_option("--bc", flags.bc, "Facet override FACET=TYPE, e.g. X1=free");
    cmd->add_option("--out", flags.out_dir, "Output directory (default: out)");
    cmd->add_option("--format", flags.format, "Stdout summary: text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--record-every", flags.record_every, "Record every N steps");
    cmd->add_option("--snapshot-every", flags.snapshot_every, "Write field snapshots every N steps");
    cmd->add_flag("--force-dt", flags.force_dt, "Run past the stability limit");
    cmd->add_option("--backend", flags.backend, "serial | openmp");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Time-step the plate in one or both forms");
  add_sim_flags(simulate);
  simulate->add_option("--form", flags.form, "geometric | dirac | both");

  CLI::App* compare = app.add_subcommand("compare", "Run both forms and record their discrepancy");
  add_sim_flags(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (derive->parsed()) return cmd_derive(model_ref, derive_form, doc_format, out_path);
    if (check->parsed()) return cmd_check(model_ref, doc_format);
    if (simulate->parsed()) return cmd_simulate(flags, false);
    if (compare->parsed()) return cmd_simulate(flags, true);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
