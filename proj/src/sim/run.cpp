#include "jetph/sim/run.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace jetph::sim {

using nlohmann::json;

namespace {

double num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) fail(ErrorKind::Config, std::string(key) + " must be a number");
  return j[key].get<double>();
}

Signal parse_signal(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    fail(ErrorKind::Config, where + ": signal needs a kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zero") return Signal::zero();
  if (kind == "sine") {
    if (!j.contains("amplitude") || !j.contains("frequency"))
      fail(ErrorKind::Config, where + ": sine signal needs amplitude and frequency");
    return Signal::sine(j["amplitude"].get<double>(), j["frequency"].get<double>(),
                        num(j, "t0", 0.0));
  }
  if (kind == "step") {
    if (!j.contains("amplitude"))
      fail(ErrorKind::Config, where + ": step signal needs an amplitude");
    return Signal::step(j["amplitude"].get<double>(), num(j, "t0", 0.0));
  }
  fail(ErrorKind::Config, where + ": unknown signal kind " + kind);
}

FacetBC parse_facet_bc(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type"))
    fail(ErrorKind::Config, where + ": facet needs a type");
  const std::string type = j["type"].get<std::string>();
  if (type == "clamped") return FacetBC::clamped();
  if (type == "free") return FacetBC::free();
  if (type == "forced") {
    FacetBC b;
    b.type = BCType::Forced;
    if (j.contains("qn")) b.qn = parse_signal(j["qn"], where + ".qn");
    if (j.contains("mn")) b.mn = parse_signal(j["mn"], where + ".mn");
    if (j.contains("mnt")) b.mnt = parse_signal(j["mnt"], where + ".mnt");
    return b;
  }
  fail(ErrorKind::Config, where + ": unknown facet type " + type + " (clamped, free, forced)");
}

}  // namespace

SimConfig sim_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Config, std::string("bad run config: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Config, "run config must be a JSON object");

  SimConfig cfg;
  if (doc.contains("model") && doc["model"].get<std::string>() != "mindlin")
    fail(ErrorKind::Config, "only the mindlin plate can be simulated");

  if (doc.contains("parameters")) {
    const json& p = doc["parameters"];
    if (!p.is_object()) fail(ErrorKind::Config, "parameters must be an object");
    cfg.params.rho = num(p, "rho", cfg.params.rho);
    cfg.params.h = num(p, "h", cfg.params.h);
    cfg.params.G = num(p, "G", cfg.params.G);
    cfg.params.D = num(p, "D", cfg.params.D);
    cfg.params.nu = num(p, "nu", cfg.params.nu);
    cfg.params.k = num(p, "k", cfg.params.k);
    cfg.params.lx = num(p, "lx", cfg.params.lx);
    cfg.params.ly = num(p, "ly", cfg.params.ly);
    cfg.params.validate();
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    cfg.nx = int(num(g, "nx", cfg.nx));
    cfg.ny = int(num(g, "ny", cfg.ny));
  }

  if (doc.contains("form")) {
    const std::string f = doc["form"].get<std::string>();
    if (f == "geometric") cfg.form = Form::Geometric;
    else if (f == "dirac") cfg.form = Form::Dirac;
    else if (f == "both") cfg.form = Form::Both;
    else fail(ErrorKind::Config, "unknown form " + f + " (geometric, dirac, both)");
  }

  cfg.dt = num(doc, "dt", cfg.dt);
  cfg.steps = (long long)num(doc, "steps", double(cfg.steps));
  cfg.record_every = int(num(doc, "record_every", cfg.record_every));
  cfg.snapshot_every = int(num(doc, "snapshot_every", cfg.snapshot_every));
  if (doc.contains("snapshot_dir")) cfg.snapshot_dir = doc["snapshot_dir"].get<std::string>();
  if (doc.contains("force_dt")) cfg.force_dt = doc["force_dt"].get<bool>();
  cfg.balance_tolerance = num(doc, "balance_tolerance", cfg.balance_tolerance);
  if (cfg.balance_tolerance < 0) fail(ErrorKind::Config, "balance_tolerance must be >= 0");
  if (doc.contains("backend")) {
    const std::string b = doc["backend"].get<std::string>();
    if (b == "serial") cfg.backend = Backend::Serial;
    else if (b == "openmp") cfg.backend = Backend::OpenMP;
    else fail(ErrorKind::Config, "unknown backend " + b + " (serial, openmp)");
  }

  if (doc.contains("bc")) {
    const json& b = doc["bc"];
    if (!b.is_object()) fail(ErrorKind::Config, "bc must map facet names to conditions");
    for (auto it = b.begin(); it != b.end(); ++it)
      cfg.bc[PlateBC::facet_index(it.key())] = parse_facet_bc(it.value(), "bc." + it.key());
  }

  if (doc.contains("ic")) {
    const json& ic = doc["ic"];
    const std::string type = ic.contains("type") ? ic["type"].get<std::string>() : "gaussian";
    if (type == "zero") cfg.ic = InitialCondition::zero();
    else if (type == "gaussian")
      cfg.ic = InitialCondition::gaussian(num(ic, "amplitude", 1e-3), num(ic, "sigma", 0.1));
    else fail(ErrorKind::Config, "unknown ic type " + type + " (zero, gaussian)");
  }

  if (cfg.steps < 0) fail(ErrorKind::Config, "steps must be nonnegative");
  if (cfg.record_every < 1) fail(ErrorKind::Config, "record_every must be at least 1");
  if (cfg.snapshot_every < 0) fail(ErrorKind::Config, "snapshot_every must be nonnegative");
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return sim_config_from_json(ss.str());
}

void write_csv(const TimeSeries& ts, std::ostream& os) {
  os << "t,H,P_boundary,balance_residual";
  if (ts.has_discrepancy) os << ",discrepancy";
  os << "\n";
  char buf[512];
  for (const Record& r : ts.rows) {
    if (ts.has_discrepancy)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.energy,
                    r.boundary_power, r.balance_residual, r.discrepancy);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.t, r.energy,
                    r.boundary_power, r.balance_residual);
    os << buf;
  }
}

void write_snapshot(const std::string& path, int rows, int cols, const double* data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Config, "cannot write snapshot " + path);
  const char magic[4] = {'J', 'P', 'H', 'F'};
  const uint32_t version = 1, r = uint32_t(rows), c = uint32_t(cols);
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&r), 4);
  out.write(reinterpret_cast<const char*>(&c), 4);
  out.write(reinterpret_cast<const char*>(data), std::streamsize(rows) * cols * 8);
  if (!out) fail(ErrorKind::Config, "failed writing snapshot " + path);
}

namespace {

void fill_balance(TimeSeries& ts) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const size_t n = ts.rows.size();
  for (size_t k = 0; k < n; ++k) {
    if (k == 0 || k + 1 >= n) {
      ts.rows[k].balance_residual = nan;
      continue;
    }
    const double dh = ts.rows[k + 1].energy - ts.rows[k - 1].energy;
    const double dt = ts.rows[k + 1].t - ts.rows[k - 1].t;
    ts.rows[k].balance_residual = dh / dt - ts.rows[k].boundary_power;
  }
}

void snapshot_fields(const std::string& dir, const char* tag, long long step, const Grid& g,
                     const NodeFields& q, const NodeFields& p) {
  char name[128];
  const int rows = g.nx + 1, cols = g.ny + 1;
  const struct { const char* field; const double* data; } items[] = {
      {"w", q.w.data()},   {"psi", q.psi.data()},   {"phi", q.phi.data()},
      {"pw", p.w.data()},  {"ppsi", p.psi.data()},  {"pphi", p.phi.data()},
  };
  for (const auto& it : items) {
    std::snprintf(name, sizeof name, "%s_%s_%06lld.bin", tag, it.field, step);
    write_snapshot((std::filesystem::path(dir) / name).string(), rows, cols, it.data);
  }
}

double max_gap(const NodeFields& a, const NodeFields& b) {
  double m = 0.0;
  for (size_t n = 0; n < a.w.size(); ++n) {
    m = std::max(m, std::abs(a.w[n] - b.w[n]));
    m = std::max(m, std::abs(a.psi[n] - b.psi[n]));
    m = std::max(m, std::abs(a.phi[n] - b.phi[n]));
  }
  return m;
}

}  // namespace

RunResult run(const SimConfig& cfg) {
  check_admissible(cfg.bc);
  const Grid grid(cfg.nx, cfg.ny, cfg.params.lx, cfg.params.ly);
  const PlateDiscretization d(cfg.params, grid, cfg.bc, cfg.backend);

  RunResult res;
  res.dt = cfg.dt > 0.0 ? cfg.dt : d.default_dt();

  const bool run_geo = cfg.form != Form::Dirac;
  const bool run_dirac = cfg.form != Form::Geometric;
  const bool both = run_geo && run_dirac;

  if (run_geo && res.dt > 0.95 * d.stable_dt()) {
    std::ostringstream msg;
    msg << "time step " << res.dt << " exceeds 95% of the explicit stability limit "
        << d.stable_dt();
    if (!cfg.force_dt) fail(ErrorKind::Numerical, msg.str() + "; shrink dt or set force_dt");
    res.warnings.push_back(msg.str() + "; continuing because force_dt is set");
  }

  GeoState geo;
  DiracState dirac;
  std::optional<DiracMidpoint> mp;
  if (run_geo) {
    geo = d.initial_geometric(cfg.ic);
    res.geometric.emplace();
    res.geometric->has_discrepancy = both;
  }
  if (run_dirac) {
    dirac = d.initial_dirac(cfg.ic);
    mp.emplace(d, res.dt);
    res.dirac.emplace();
    res.dirac->has_discrepancy = both;
  }

  const bool snapshots = cfg.snapshot_every > 0 && !cfg.snapshot_dir.empty();
  if (snapshots) std::filesystem::create_directories(cfg.snapshot_dir);

  auto record = [&](long long step) {
    const double disc = both ? max_gap(geo.q, dirac.recon) : 0.0;
    if (run_geo) {
      Record r;
      r.t = geo.t;
      r.energy = d.energy_geometric(geo);
      r.boundary_power = d.boundary_power(geo.p, geo.t);
      r.discrepancy = disc;
      res.geometric->rows.push_back(r);
    }
    if (run_dirac) {
      Record r;
      r.t = dirac.t;
      r.energy = d.energy_dirac(dirac);
      r.boundary_power = d.boundary_power(dirac.p, dirac.t);
      r.discrepancy = disc;
      res.dirac->rows.push_back(r);
    }
    if (snapshots && step % cfg.snapshot_every == 0) {
      if (run_geo) snapshot_fields(cfg.snapshot_dir, "geo", step, grid, geo.q, geo.p);
      if (run_dirac) snapshot_fields(cfg.snapshot_dir, "dirac", step, grid, dirac.recon, dirac.p);
    }
  };

  record(0);
  for (long long s = 1; s <= cfg.steps; ++s) {
    if (run_geo) leapfrog_step(d, geo, res.dt, cfg.force_dt);
    if (run_dirac) mp->step(dirac);
    if (s % cfg.record_every == 0 || s == cfg.steps) record(s);
  }

  if (res.geometric) fill_balance(*res.geometric);
  if (res.dirac) fill_balance(*res.dirac);
  if (run_geo) res.geo_final = std::move(geo);
  if (run_dirac) res.dirac_final = std::move(dirac);
  return res;
}

}  // namespace jetph::sim
