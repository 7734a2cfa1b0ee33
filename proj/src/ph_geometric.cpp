#include "jetph/ph_geometric.hpp"

#include <algorithm>

#include "jetph/error.hpp"

namespace jetph {

namespace {

bool contains_time_jet(const Expression& e) {
  for (const auto& s : e.symbols())
    if (s.is_jet())
      for (const auto& d : s.mindex)
        if (d == "t") return true;
  return false;
}

}  // namespace

std::pair<MomentumMap, GeometricPH> legendre_transform(const Density& L) {
  L.validate(1);
  if (!L.chart.has_time())
    fail(ErrorKind::Structure, "Legendre transform needs a time coordinate");
  if (L.expr.depends_on(Symbol::parameter("t")))
    fail(ErrorKind::Structure, "density with explicit time dependence is not supported");

  MomentumMap mm;
  mm.lagrangian_chart = L.chart;
  mm.configs = L.chart.dep;

  for (const auto& a : mm.configs)
    if (L.chart.is_dep(MomentumMap::momentum_name(a)))
      fail(ErrorKind::Structure, "field name " + MomentumMap::momentum_name(a) + " clashes with a momentum");

  // diagonal velocity Hessian with jet-free monomial masses
  std::map<std::string, Expression> mass, shift;
  for (const auto& a : mm.configs) {
    Symbol va = Symbol::jet(a, {"t"});
    Expression p_def = L.expr.partial(va);
    mm.definition[a] = normalize(p_def);
    for (const auto& b : mm.configs) {
      if (a == b) continue;
      if (!p_def.partial(Symbol::jet(b, {"t"})).is_zero())
        fail(ErrorKind::NotHyperregular,
             "velocity cross term between " + a + " and " + b);
    }
    Expression m = p_def.partial(va);
    if (m.is_zero())
      fail(ErrorKind::NotHyperregular, "density is degenerate in the velocity of " + a);
    for (const auto& s : m.symbols())
      if (s.is_jet())
        fail(ErrorKind::NotHyperregular, "velocity coefficient of " + a + " is not field-free");
    if (m.terms().size() != 1)
      fail(ErrorKind::NotHyperregular, "velocity coefficient of " + a + " is not a monomial");
    mass[a] = m;
    Expression b = normalize(p_def - m * Expression::jet(a, {"t"}));
    if (contains_time_jet(b))
      fail(ErrorKind::NotHyperregular, "momentum of " + a + " is not affine in the velocity");
    shift[a] = b;
  }
  for (const auto& a : mm.configs) {
    Expression p = Expression::jet(MomentumMap::momentum_name(a));
    mm.velocity[a] = normalize((p - shift[a]).divided_by(mass[a]));
  }

  // H = sum p*velocity - L, with velocities eliminated
  std::map<Symbol, Expression> subst;
  for (const auto& a : mm.configs) subst[Symbol::jet(a, {"t"})] = mm.velocity[a];
  Expression Hexpr;
  for (const auto& a : mm.configs)
    Hexpr = Hexpr + Expression::jet(MomentumMap::momentum_name(a)) * mm.velocity[a];
  Hexpr = normalize(Hexpr - L.expr.substitute(subst));
  if (contains_time_jet(Hexpr)) fail(ErrorKind::Internal, "velocities survived elimination");

  // inverse composed with definition must reproduce the velocity
  for (const auto& a : mm.configs) {
    std::map<Symbol, Expression> back{
        {Symbol::jet(MomentumMap::momentum_name(a)), mm.definition.at(a)}};
    if (!equivalent(mm.velocity.at(a).substitute(back), Expression::jet(a, {"t"})))
      fail(ErrorKind::Internal, "momentum inverse does not invert the definition for " + a);
  }

  Density H;
  H.chart.indep = L.chart.spatial();
  H.chart.dep = mm.configs;
  for (const auto& a : mm.configs) H.chart.dep.push_back(MomentumMap::momentum_name(a));
  H.expr = Hexpr;
  H.validate(1);

  return {mm, build_geometric_ph(mm, H)};
}

GeometricPH build_geometric_ph(const MomentumMap& mm, const Density& H) {
  H.validate(1);
  GeometricPH ph;
  ph.chart = H.chart;
  ph.configs = mm.configs;
  for (const auto& a : mm.configs) ph.momenta.push_back(MomentumMap::momentum_name(a));

  const size_t n = ph.configs.size();
  std::vector<std::string> state = ph.configs;
  state.insert(state.end(), ph.momenta.begin(), ph.momenta.end());
  if (state != H.chart.dep)
    fail(ErrorKind::Structure, "state ordering must be configurations then momenta");

  for (const auto& s : H.expr.symbols())
    if (s.is_jet() && s.order() > 0 &&
        std::find(ph.momenta.begin(), ph.momenta.end(), s.field) != ph.momenta.end())
      fail(ErrorKind::Structure, "H carries a spatial jet of momentum " + s.field);

  ph.J.assign(2 * n, std::vector<Rational>(2 * n, Rational(0)));
  for (size_t i = 0; i < n; ++i) {
    ph.J[i][n + i] = Rational(1);
    ph.J[n + i][i] = Rational(-1);
  }

  // variational gradient: full variational derivative over configurations,
  // plain partial over momenta
  ph.H = H;
  std::vector<Expression> grad(2 * n);
  for (size_t i = 0; i < n; ++i) {
    grad[i] = variational_derivative(H, ph.configs[i]);
    grad[n + i] = normalize(H.expr.partial(Symbol::jet(ph.momenta[i])));
  }
  for (size_t i = 0; i < 2 * n; ++i) {
    Expression r;
    for (size_t j = 0; j < 2 * n; ++j)
      if (!(ph.J[i][j] == Rational(0))) r = r + ph.J[i][j] * grad[j];
    ph.rhs[state[i]] = normalize(r);
  }
  return ph;
}

PowerBalanceForm power_balance_form(const GeometricPH& ph) {
  PowerBalanceForm pb;
  pb.chart = ph.chart;
  for (const auto& dir : ph.chart.spatial()) {
    Expression s;
    for (const auto& dep : ph.chart.dep)
      s = s + ph.rhs.at(dep) * ph.H.expr.partial(Symbol::jet(dep, {dir}));
    s = normalize(s);
    if (!s.is_zero()) pb.facet_integrand[dir] = std::move(s);
  }
  return pb;
}

ELSystem eliminate_momenta(const GeometricPH& ph, const MomentumMap& mm) {
  std::map<std::string, Expression> defs;
  for (const auto& a : mm.configs) defs[MomentumMap::momentum_name(a)] = mm.definition.at(a);

  auto back_substitute = [&](const Expression& e) {
    // momentum jets of any order map to total derivatives of the definition
    std::map<Symbol, Expression> bind;
    for (const auto& s : e.symbols()) {
      if (!s.is_jet()) continue;
      auto it = defs.find(s.field);
      if (it == defs.end()) continue;
      Expression v = it->second;
      for (const auto& d : s.mindex) v = v.total_derivative(d);
      bind.emplace(s, std::move(v));
    }
    return e.substitute(bind);
  };

  ELSystem sys;
  sys.chart = mm.lagrangian_chart;
  for (const auto& a : mm.configs) {
    // rate of the momentum definition moved to the right-hand side
    Expression r = back_substitute(ph.rhs.at(MomentumMap::momentum_name(a))) -
                   mm.definition.at(a).total_derivative("t");
    sys.residuals[a] = normalize(r);
  }
  return sys;
}

}  // namespace jetph
