#include "jetph/ph_dirac.hpp"

#include <algorithm>

#include "jetph/error.hpp"

namespace jetph {

bool ScalarDiffOp::is_zero() const {
  if (!(c0 == Rational(0))) return false;
  for (const auto& [d, c] : c1)
    if (!(c == Rational(0))) return false;
  return true;
}

Expression ScalarDiffOp::apply(const Expression& e) const {
  Expression r = c0 * e;
  for (const auto& [d, c] : c1)
    if (!(c == Rational(0))) r = r + c * e.total_derivative(d);
  return r;
}

std::string ScalarDiffOp::str() const {
  std::string out;
  auto append = [&out](const Rational& c, const std::string& sym) {
    if (c == Rational(0)) return;
    std::string mag = (c.num() < 0 ? (-c).str() : c.str());
    std::string sign = (c.num() < 0) ? "-" : "+";
    if (out.empty())
      out = (sign == "-" ? "-" : "");
    else
      out += " " + sign + " ";
    if (sym.empty())
      out += mag;
    else
      out += (mag == "1" ? sym : mag + "*" + sym);
  };
  append(c0, "");
  for (const auto& [d, c] : c1) append(c, "d_" + d);
  return out.empty() ? "0" : out;
}

std::vector<Expression> MatrixDiffOperator::apply(const std::vector<Expression>& efforts) const {
  if (efforts.size() != entries.size())
    fail(ErrorKind::Internal, "effort vector length does not match the operator");
  std::vector<Expression> out(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    Expression r;
    for (size_t j = 0; j < entries[i].size(); ++j)
      if (!entries[i][j].is_zero()) r = r + entries[i][j].apply(efforts[j]);
    out[i] = normalize(r);
  }
  return out;
}

Rational MatrixDiffOperator::c1(size_t i, size_t j, const std::string& dir) const {
  auto it = entries[i][j].c1.find(dir);
  return it == entries[i][j].c1.end() ? Rational(0) : it->second;
}

size_t StokesDirac::index_of(const std::string& name) const {
  for (size_t i = 0; i < chi.size(); ++i)
    if (chi[i].name == name) return i;
  fail(ErrorKind::Internal, "unknown energy variable " + name);
}

namespace {

// linear-in-jets coefficient table of one strain provenance:
// per configuration the order-0 coefficient and per-direction coefficients
struct StrainCoeffs {
  std::map<std::string, Rational> c0;
  std::map<std::string, std::map<std::string, Rational>> cA;
};

StrainCoeffs strain_coefficients(const StrainDecl& s, const Chart& lag) {
  StrainCoeffs out;
  for (const auto& [mono, coeff] : s.provenance.terms()) {
    const Symbol* jet = nullptr;
    for (const auto& [sym, exp] : mono.factors) {
      if (!sym.is_jet())
        fail(ErrorKind::Representation,
             "strain " + s.name + " has a non-constant coefficient");
      if (jet || exp != 1)
        fail(ErrorKind::Representation, "strain " + s.name + " is not linear in the jets");
      jet = &sym;
    }
    if (!jet) fail(ErrorKind::Representation, "strain " + s.name + " has a constant term");
    if (!lag.is_dep(jet->field))
      fail(ErrorKind::Representation,
           "strain " + s.name + " references undeclared field " + jet->field);
    if (jet->order() == 0) {
      out.c0[jet->field] = out.c0[jet->field] + coeff;
    } else if (jet->order() == 1 && jet->mindex[0] != "t") {
      out.cA[jet->field][jet->mindex[0]] =
          out.cA[jet->field][jet->mindex[0]] + coeff;
    } else {
      fail(ErrorKind::Representation,
           "strain " + s.name + " must use spatial jets of order at most one");
    }
  }
  return out;
}

void require_algebraic_in(const Expression& e, const std::vector<std::string>& fields,
                          const std::string& what) {
  for (const auto& s : e.symbols()) {
    if (!s.is_jet()) continue;
    bool owned = std::find(fields.begin(), fields.end(), s.field) != fields.end();
    if (!owned)
      fail(ErrorKind::Representation, what + " references foreign field " + s.field);
    if (s.order() > 0)
      fail(ErrorKind::Representation, what + " carries a jet of " + s.field);
  }
}

}  // namespace

StokesDirac build_stokes_dirac(const Density& L,
                               const std::vector<std::string>& chi_order,
                               const std::vector<StrainDecl>& strains,
                               const Expression& V_strain) {
  auto [mm, geo] = legendre_transform(L);

  StokesDirac sd;
  sd.lagrangian_chart = L.chart;
  sd.mm = mm;

  std::map<std::string, StrainCoeffs> coeffs;
  std::vector<std::string> strain_names;
  for (const auto& s : strains) {
    coeffs.emplace(s.name, strain_coefficients(s, L.chart));
    strain_names.push_back(s.name);
  }

  // assemble chi in the requested order
  if (chi_order.size() != mm.configs.size() + strains.size())
    fail(ErrorKind::Representation, "energy state must list every momentum and strain");
  for (const auto& name : chi_order) {
    EnergyVariable v;
    v.name = name;
    auto sit = std::find_if(strains.begin(), strains.end(),
                            [&](const StrainDecl& s) { return s.name == name; });
    if (sit != strains.end()) {
      v.kind = EnergyVariable::Kind::Strain;
      v.provenance = sit->provenance;
    } else {
      auto cit = std::find_if(mm.configs.begin(), mm.configs.end(), [&](const std::string& c) {
        return MomentumMap::momentum_name(c) == name;
      });
      if (cit == mm.configs.end())
        fail(ErrorKind::Representation, "energy variable " + name + " is neither momentum nor strain");
      v.kind = EnergyVariable::Kind::Momentum;
      v.config = *cit;
      v.provenance = mm.definition.at(*cit);
    }
    sd.chi.push_back(std::move(v));
  }
  for (size_t i = 0; i < sd.chi.size(); ++i)
    for (size_t j = i + 1; j < sd.chi.size(); ++j)
      if (sd.chi[i].name == sd.chi[j].name)
        fail(ErrorKind::Representation, "duplicate energy variable " + sd.chi[i].name);

  sd.chart.indep = L.chart.spatial();
  sd.chart.dep = chi_order;
  sd.chart.validate();

  // potential part of the density: minus the density at frozen velocities
  std::map<Symbol, Expression> freeze;
  for (const auto& a : mm.configs) freeze[Symbol::jet(a, {"t"})] = Expression{};
  Expression V_cfg = normalize(Expression{} - L.expr.substitute(freeze));

  // kinetic part must be algebraic in the momenta
  std::vector<std::string> momentum_names;
  for (const auto& a : mm.configs) momentum_names.push_back(MomentumMap::momentum_name(a));
  Expression K = normalize(geo.H.expr - V_cfg);
  require_algebraic_in(K, momentum_names, "kinetic energy");
  require_algebraic_in(V_strain, strain_names, "strain potential");

  // the strain potential composed with the provenance is the density potential
  std::map<Symbol, Expression> to_jets;
  for (const auto& s : strains) to_jets[Symbol::jet(s.name)] = s.provenance;
  if (!equivalent(V_strain.substitute(to_jets), V_cfg))
    fail(ErrorKind::Representation,
         "strain potential does not reproduce the potential part of the density");

  sd.H = normalize(K + V_strain);
  for (const auto& v : sd.chi)
    sd.efforts.push_back(normalize(sd.H.partial(Symbol::jet(v.name))));

  // operator rows: strain rates take total derivatives of velocity efforts,
  // momentum rates collect the formally adjoint entries
  const size_t n = sd.chi.size();
  sd.J.chart = sd.chart;
  sd.J.entries.assign(n, std::vector<ScalarDiffOp>(n));
  for (size_t i = 0; i < n; ++i) {
    const auto& vi = sd.chi[i];
    for (size_t j = 0; j < n; ++j) {
      const auto& vj = sd.chi[j];
      if (vi.kind == EnergyVariable::Kind::Strain &&
          vj.kind == EnergyVariable::Kind::Momentum) {
        const auto& sc = coeffs.at(vi.name);
        auto c0 = sc.c0.find(vj.config);
        if (c0 != sc.c0.end()) sd.J.entries[i][j].c0 = c0->second;
        auto ca = sc.cA.find(vj.config);
        if (ca != sc.cA.end()) sd.J.entries[i][j].c1 = ca->second;
      } else if (vi.kind == EnergyVariable::Kind::Momentum &&
                 vj.kind == EnergyVariable::Kind::Strain) {
        const auto& sc = coeffs.at(vj.name);
        auto c0 = sc.c0.find(vi.config);
        if (c0 != sc.c0.end()) sd.J.entries[i][j].c0 = -c0->second;
        auto ca = sc.cA.find(vi.config);
        if (ca != sc.cA.end()) sd.J.entries[i][j].c1 = ca->second;
      }
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!(sd.J.c0(i, j) + sd.J.c0(j, i) == Rational(0)))
        fail(ErrorKind::Internal, "zero-order part lost skew symmetry");
      for (const auto& dir : sd.chart.spatial())
        if (!(sd.J.c1(i, j, dir) == sd.J.c1(j, i, dir)))
          fail(ErrorKind::Internal, "first-order part lost symmetry");
    }

  auto rates = sd.J.apply(sd.efforts);
  for (size_t i = 0; i < n; ++i) sd.rhs[sd.chi[i].name] = rates[i];
  return sd;
}

BoundaryBilinear formal_adjoint_identity(const MatrixDiffOperator& J) {
  const size_t n = J.entries.size();
  BoundaryBilinear bb;
  bb.chart.indep = J.chart.spatial();
  for (size_t i = 0; i < n; ++i) bb.left.push_back("ea" + std::to_string(i + 1));
  for (size_t i = 0; i < n; ++i) bb.right.push_back("eb" + std::to_string(i + 1));
  bb.chart.dep = bb.left;
  bb.chart.dep.insert(bb.chart.dep.end(), bb.right.begin(), bb.right.end());
  bb.chart.validate();

  std::vector<Expression> ea, eb;
  for (size_t i = 0; i < n; ++i) {
    ea.push_back(Expression::jet(bb.left[i]));
    eb.push_back(Expression::jet(bb.right[i]));
  }

  Expression S;
  auto Jeb = J.apply(eb);
  auto Jea = J.apply(ea);
  for (size_t i = 0; i < n; ++i) S = S + ea[i] * Jeb[i] + eb[i] * Jea[i];

  Expression divergence;
  for (const auto& dir : bb.chart.spatial()) {
    Expression B;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational c = J.c1(i, j, dir);
        if (!(c == Rational(0))) B = B + c * ea[i] * eb[j];
      }
    B = normalize(B);
    if (!B.is_zero()) bb.facet_bilinear[dir] = B;
    divergence = divergence + B.total_derivative(dir);
  }

  if (!normalize(S - divergence).is_zero())
    fail(ErrorKind::NotSkewAdjoint,
         "domain pairing is not the divergence of the facet bilinear");
  return bb;
}

std::map<std::string, Expression> dirac_power_integrands(const StokesDirac& sd) {
  std::map<std::string, Expression> out;
  const size_t n = sd.chi.size();
  for (const auto& dir : sd.chart.spatial()) {
    Expression s;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational c = sd.J.c1(i, j, dir);
        if (!(c == Rational(0)))
          s = s + Rational(1, 2) * c * sd.efforts[i] * sd.efforts[j];
      }
    s = normalize(s);
    if (!s.is_zero()) out[dir] = std::move(s);
  }
  return out;
}

std::vector<Expression> compatibility_residuals(const StokesDirac& sd) {
  std::vector<Expression> out;
  for (const auto& v : sd.chi)
    if (v.kind == EnergyVariable::Kind::Strain)
      out.push_back(normalize(Expression::jet(v.name) - v.provenance));
  return out;
}

ELSystem expand_dirac_to_displacement(const StokesDirac& sd) {
  auto back_substitute = [&](const Expression& e) {
    std::map<Symbol, Expression> bind;
    for (const auto& s : e.symbols()) {
      if (!s.is_jet()) continue;
      bool ours = false;
      Expression v;
      for (const auto& cv : sd.chi)
        if (cv.name == s.field) {
          ours = true;
          v = cv.provenance;
          break;
        }
      if (!ours) continue;
      for (const auto& d : s.mindex) v = v.total_derivative(d);
      bind.emplace(s, std::move(v));
    }
    return e.substitute(bind);
  };

  ELSystem sys;
  sys.chart = sd.lagrangian_chart;
  for (const auto& a : sd.mm.configs) {
    Expression r = back_substitute(sd.rhs.at(MomentumMap::momentum_name(a))) -
                   sd.mm.definition.at(a).total_derivative("t");
    sys.residuals[a] = normalize(r);
  }
  return sys;
}

}  // namespace jetph
