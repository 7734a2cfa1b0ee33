#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetph/ph_dirac.hpp"

namespace jetph {

// A field model as data: the chart, the Lagrangian density, the energy-state
// declaration for the first-order representation, and numeric parameter
// bindings. Presets exist for the plate and the 1D wave; custom models load
// from JSON so the derivation pipeline is not tied to one Lagrangian.
struct FieldModel {
  std::string name;
  Chart chart;
  Density lagrangian;
  std::vector<std::string> chi_order;
  std::vector<StrainDecl> strains;
  Expression strain_potential;
  std::map<std::string, double> param_values;

  bool has_energy_state() const { return !chi_order.empty(); }
  StokesDirac stokes_dirac() const;
};

FieldModel mindlin_model();
FieldModel wave1d_model();

// Preset name ("mindlin", "wave1d") or a path to a JSON model definition.
FieldModel load_model(const std::string& name_or_path);

// Parse a model from a JSON document (see README for the schema).
FieldModel model_from_json(const std::string& text);

}  // namespace jetph
