#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetph/ph_geometric.hpp"

namespace jetph {

// One energy variable: a temporal momentum or a strain. The provenance
// expression lives on the Lagrangian chart (momentum definition, or the
// strain written in configuration jets) and must be linear in the jets with
// rational constant coefficients.
struct EnergyVariable {
  enum class Kind { Momentum, Strain };
  std::string name;
  Kind kind = Kind::Strain;
  std::string config;      // owning configuration field for momenta
  Expression provenance;
};

// A strain declaration for model assembly.
struct StrainDecl {
  std::string name;
  Expression provenance;  // linear in configuration jets
};

// Scalar first-order differential operator with rational constants:
// c0 + sum over directions of c1[dir] * d_dir.
struct ScalarDiffOp {
  Rational c0{0};
  std::map<std::string, Rational> c1;

  bool is_zero() const;
  Expression apply(const Expression& e) const;
  std::string str() const;
};

// Square matrix of scalar first-order operators over a spatial chart whose
// fields are the energy variables. Formally skew-adjoint when the zero-order
// coefficient matrix is skew-symmetric and each first-order coefficient
// matrix is symmetric.
struct MatrixDiffOperator {
  Chart chart;  // spatial; dep = energy variable names in order
  std::vector<std::vector<ScalarDiffOp>> entries;

  std::vector<Expression> apply(const std::vector<Expression>& efforts) const;
  Rational c0(size_t i, size_t j) const { return entries[i][j].c0; }
  Rational c1(size_t i, size_t j, const std::string& dir) const;
};

// The complete first-order representation in energy variables: the energy
// state chi, the Hamiltonian algebraic in chi, the effort map e = dH/dchi,
// and the operator J with chi rate = J e.
struct StokesDirac {
  Chart lagrangian_chart;
  MomentumMap mm;
  Chart chart;  // spatial; dep = chi names in order
  std::vector<EnergyVariable> chi;
  Expression H;
  std::vector<Expression> efforts;
  MatrixDiffOperator J;
  std::map<std::string, Expression> rhs;  // chi name -> (J e) component

  size_t index_of(const std::string& name) const;
};

// Builds the representation from a first-order Lagrangian density, the chi
// ordering (momentum and strain names), the strain declarations, and the
// potential rewritten algebraically in the strains. Checks that the strain
// potential composed with the provenance reproduces the potential part of
// the density and that the Hamiltonian is algebraic in chi.
StokesDirac build_stokes_dirac(const Density& L,
                               const std::vector<std::string>& chi_order,
                               const std::vector<StrainDecl>& strains,
                               const Expression& V_strain);

// Facet bilinear produced by integrating e1.(J e2) + e2.(J e1) by parts:
// per spatial direction A the form B_A(a, b) = sum c1[A]_ij a_i b_j over
// fresh effort fields. Upper facets carry +B_A, lower facets -B_A.
struct BoundaryBilinear {
  Chart chart;                     // spatial; paired fresh effort fields
  std::vector<std::string> left;   // field names of the first effort vector
  std::vector<std::string> right;  // field names of the second effort vector
  std::map<std::string, Expression> facet_bilinear;  // by direction
};

// Verifies formal skew-adjointness by symbolic integration by parts: the
// domain remainder of the symmetrized pairing minus the divergence of the
// candidate facet bilinear must vanish identically.
BoundaryBilinear formal_adjoint_identity(const MatrixDiffOperator& J);

// Half the diagonal facet bilinear with the actual effort expressions
// substituted: the boundary power integrand per spatial direction.
std::map<std::string, Expression> dirac_power_integrands(const StokesDirac& sd);

// Strain variables minus their defining expressions; zero along any state
// reconstructed from configurations.
std::vector<Expression> compatibility_residuals(const StokesDirac& sd);

// Substitutes provenance into the momentum rows and moves the momentum rate
// across: the residuals match the Euler-Lagrange system field by field.
ELSystem expand_dirac_to_displacement(const StokesDirac& sd);

}  // namespace jetph
