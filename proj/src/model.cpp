#include "jetph/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jetph/error.hpp"
#include "jetph/mindlin.hpp"
#include "jetph/parser.hpp"

namespace jetph {

StokesDirac FieldModel::stokes_dirac() const {
  if (!has_energy_state())
    fail(ErrorKind::Config, "model " + name + " declares no energy state");
  return build_stokes_dirac(lagrangian, chi_order, strains, strain_potential);
}

FieldModel mindlin_model() {
  FieldModel m;
  m.name = "mindlin";
  m.chart = plate_chart();
  m.lagrangian = plate_lagrangian();
  m.chi_order = plate_chi_order();
  m.strains = plate_strains();
  m.strain_potential = plate_strain_potential();
  m.param_values = PlateParams{}.symbol_values();
  return m;
}

FieldModel wave1d_model() {
  FieldModel m;
  m.name = "wave1d";
  m.chart = Chart{{"t", "X"}, {"w"}};
  m.lagrangian = Density{m.chart, parse_expression("rho/2*w_t^2 - T/2*w_X^2", m.chart)};
  m.chi_order = {"p_w", "eps"};
  m.strains = {{"eps", parse_expression("w_X", m.chart)}};
  Chart sc{{"X"}, {"eps"}};
  m.strain_potential = parse_expression("T/2*eps^2", sc);
  m.param_values = {{"rho", 1.0}, {"T", 1.0}};
  return m;
}

FieldModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Config, std::string("model JSON is malformed: ") + e.what());
  }
  try {
    FieldModel m;
    m.name = j.value("name", "custom");
    m.chart.indep = j.at("independent").get<std::vector<std::string>>();
    m.chart.dep = j.at("fields").get<std::vector<std::string>>();
    m.chart.validate();
    m.lagrangian = Density{m.chart, parse_expression(j.at("lagrangian").get<std::string>(), m.chart)};
    m.lagrangian.validate(1);
    if (j.contains("strains")) {
      std::vector<std::string> strain_names;
      for (const auto& item : j.at("strains")) {
        StrainDecl s;
        s.name = item.at(0).get<std::string>();
        s.provenance = parse_expression(item.at(1).get<std::string>(), m.chart);
        strain_names.push_back(s.name);
        m.strains.push_back(std::move(s));
      }
      m.chi_order = j.at("chi").get<std::vector<std::string>>();
      Chart sc;
      sc.indep = m.chart.spatial();
      sc.dep = strain_names;
      sc.validate();
      m.strain_potential = parse_expression(j.at("strain_potential").get<std::string>(), sc);
    }
    if (j.contains("parameters"))
      for (const auto& [key, val] : j.at("parameters").items())
        m.param_values[key] = val.get<double>();
    return m;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Config, std::string("model JSON is incomplete: ") + e.what());
  }
}

FieldModel load_model(const std::string& name_or_path) {
  if (name_or_path == "mindlin") return mindlin_model();
  if (name_or_path == "wave1d") return wave1d_model();
  std::ifstream in(name_or_path);
  if (!in)
    fail(ErrorKind::Config, "unknown model '" + name_or_path +
                                "' (not a preset, not a readable file)");
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace jetph
