// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "cps/basicity.hpp"
#include "cps/generators.hpp"

namespace cps {

namespace {

constexpr const char* tool_version = "0.3.0";
constexpr double exact_floor = 1e-12;

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
  std::string where;
  if (node.IsDefined() && node.Mark().line >= 0)
    where = " (line " + std::to_string(node.Mark().line + 1) + ")";
  throw ConfigError(what + where);
}

YAML::Node child(const YAML::Node& node, const std::string& key) {
  if (!node.IsMap()) fail(node, "expected a table holding '" + key + "'");
  return node[key];
}

template <class V>
V read(const YAML::Node& node, const std::string& key, V fallback) {
  const YAML::Node v = node.IsMap() ? node[key] : YAML::Node();
  if (!v.IsDefined() || v.IsNull()) return fallback;
  try {
    return v.as<V>();
  } catch (const YAML::Exception&) {
    fail(v, "bad value for '" + key + "'");
  }
}

template <class V>
V require(const YAML::Node& node, const std::string& key) {
  const YAML::Node v = child(node, key);
  if (!v.IsDefined()) fail(node, "missing key '" + key + "'");
  try {
    return v.as<V>();
  } catch (const YAML::Exception&) {
    fail(v, "bad value for '" + key + "'");
  }
}

Json to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Map: {
      Json out = Json::object();
      for (const auto& kv : node) out[kv.first.as<std::string>()] = to_json(kv.second);
      return out;
    }
    case YAML::NodeType::Sequence: {
      Json out = Json::array();
      for (const auto& v : node) out.push_back(to_json(v));
      return out;
    }
    case YAML::NodeType::Scalar: {
      const std::string s = node.Scalar();
      if (node.Tag() == "!") return s;  // quoted
      if (s == "true") return true;
      if (s == "false") return false;
      try {
        std::size_t used = 0;
        const long long i = std::stoll(s, &used);
        if (used == s.size()) return i;
      } catch (...) {
      }
      try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used == s.size()) return d;
      } catch (...) {
      }
      return s;
    }
    default:
      return nullptr;
  }
}

// Scenario context ----------------------------------------------------------

struct Context {
  YAML::Node config;
  std::uint64_t seed = 1;
  Grid grid;
  Region region;
  std::string theory_name;

  std::unique_ptr<YangMillsScalar> ym;
  FieldPoint<cplx> phi;
  std::map<std::string, FieldDependentMap<cplx>> params;

  std::unique_ptr<AnalyticGeometry> geometry;
  std::unique_ptr<GravityData> gravity;
};

Region build_region(const YAML::Node& spec,
                    const std::optional<std::vector<int>>& override_res,
                    const YAML::Node& refine_axes) {
  const int dim = require<int>(spec, "dim");
  if (dim < 1 || dim > max_dim) fail(spec["dim"], "dim must be 1..4");
  const YAML::Node bounds = child(spec, "bounds");
  if (!bounds.IsSequence() || static_cast<int>(bounds.size()) != dim)
    fail(bounds, "bounds needs one [lo, hi] pair per axis");
  std::vector<double> lo(dim), hi(dim);
  for (int a = 0; a < dim; ++a) {
    lo[a] = bounds[a][0].as<double>();
    hi[a] = bounds[a][1].as<double>();
    if (!(hi[a] > lo[a])) fail(bounds[a], "empty interval");
  }
  std::vector<int> cells = require<std::vector<int>>(spec, "resolution");
  if (static_cast<int>(cells.size()) != dim)
    fail(spec["resolution"], "resolution needs one entry per axis");
  if (override_res) {
    if (override_res->size() == 1) {
      std::vector<int> axes;
      if (refine_axes.IsDefined() && !refine_axes.IsNull())
        axes = refine_axes.as<std::vector<int>>();
      else
        for (int a = 0; a < dim; ++a) axes.push_back(a);
      for (int a : axes) cells[a] = override_res->front();
    } else if (static_cast<int>(override_res->size()) == dim) {
      cells = *override_res;
    } else {
      throw ConfigError("resolution override has the wrong length");
    }
  }
  for (int c : cells)
    if (c < 2) fail(spec["resolution"], "each axis needs at least 2 cells");
  const Grid grid = Grid::box(lo, hi, cells);
  const std::string sig = read<std::string>(spec, "signature", "lorentzian");
  Signature signature = sig == "lorentzian"  ? Signature::lorentzian(dim)
                        : sig == "euclidean" ? Signature::euclidean(dim)
                                             : Signature::parse(sig, dim);
  const std::string metric = read<std::string>(spec, "metric", "flat");
  if (metric != "flat") fail(spec["metric"], "only a flat region metric is configurable");
  Region region = Region::flat(grid, signature);
  if (const YAML::Node s = spec["slice"]; s.IsDefined()) {
    const int axis = read<int>(s, "axis", 0);
    if (axis < 0 || axis >= dim) fail(s, "slice axis out of range");
    const std::string idx = read<std::string>(s, "index", "mid");
    const int index = idx == "mid" ? grid.cells[axis] / 2 : std::stoi(idx);
    region.set_slice({axis, index});
  }
  return region;
}

SmoothSpec smooth_spec(const YAML::Node& node, std::uint64_t seed,
                       double amplitude = 0.5) {
  return {read<double>(node, "amplitude", amplitude), read<int>(node, "modes", 2),
          seed + read<std::uint64_t>(node, "seed_offset", 0)};
}

Form<cplx> constant_from(const YAML::Node& node, const Context& ctx) {
  return constant_algebra(ctx.grid, ctx.phi.group(),
                          read<std::vector<double>>(node, "coefficients", {}));
}

FieldDependentMap<cplx> build_param(const std::string& name,
                                    const YAML::Node& spec, const Context& ctx) {
  const std::string kind = require<std::string>(spec, "kind");
  FieldDependentMap<cplx> out;
  if (kind == "constant" || kind == "zero") {
    const Form<cplx> c = kind == "zero" ? zero_like(constant_from(spec, ctx))
                                        : constant_from(spec, ctx);
    return [c](const FieldPoint<cplx>&) { return c; };
  }
  if (kind == "random_smooth") {
    const Form<cplx> c = random_algebra_form(
        ctx.grid, ctx.phi.group(), 0,
        smooth_spec(spec, ctx.seed * 31 + std::hash<std::string>{}(name) % 997, 0.3));
    return [c](const FieldPoint<cplx>&) { return c; };
  }
  if (kind == "matter_moment") {
    out = matter_moment_parameter(read<double>(spec, "scale", 1.0));
  } else if (kind == "matter_density") {
    out = matter_density_parameter(read<double>(spec, "scale", 1.0));
  } else if (kind == "potential_average") {
    const auto axes = read<std::vector<int>>(spec, "axes", {0, 1});
    if (axes.size() != 2) fail(spec["axes"], "axes needs two entries");
    out = potential_average_parameter(axes[0], axes[1],
                                      read<double>(spec, "scale", 1.0));
  } else {
    fail(spec["kind"], "unknown parameter kind '" + kind + "'");
  }
  if (spec["coefficients"].IsDefined())
    out = offset_parameter(std::move(out), constant_from(spec, ctx));
  return out;
}

std::unique_ptr<Context> build_context(YAML::Node config,
                                       const RunOptions& options) {
  auto ctx = std::make_unique<Context>();
  ctx->config = config;
  ctx->seed = options.seed ? *options.seed : read<std::uint64_t>(config, "seed", 1);
  const YAML::Node refine = config["refine"];
  ctx->region = build_region(child(config, "region"), options.resolution,
                             refine.IsDefined() ? refine["axes"] : YAML::Node());
  ctx->grid = ctx->region.grid();

  const YAML::Node theory = child(config, "theory");
  ctx->theory_name = require<std::string>(theory, "name");
  const YAML::Node fields = child(config, "fields");
  const std::string generator = require<std::string>(fields, "generator");
  const YAML::Node fparams = fields["params"];

  if (ctx->theory_name == "yang_mills_scalar") {
    const GroupTag group = GroupTag::parse(read<std::string>(theory, "group", "su2"));
    const RepTag rep = parse_rep(read<std::string>(theory, "rep", "none"));
    const YAML::Node couplings = theory["couplings"];
    const ScalarPotential potential{read<double>(couplings, "mu2", 0.0),
                                    read<double>(couplings, "lambda", 0.0)};
    ctx->ym = std::make_unique<YangMillsScalar>(ctx->region, group, rep, potential);
    if (generator == "random_smooth") {
      ctx->phi = random_ym_point(ctx->grid, group, rep, smooth_spec(fparams, ctx->seed),
                                 read<double>(fparams, "offset", 1.0));
    } else if (generator == "bessel_onshell") {
      ctx->phi = bessel_onshell(ctx->grid, read<double>(fparams, "k", 2.0),
                                read<double>(fparams, "amplitude", 0.7));
    } else if (generator == "smoothed_coulomb") {
      ctx->phi = smoothed_coulomb(ctx->grid, read<double>(fparams, "charge", 1.0),
                                  read<double>(fparams, "sigma", 0.25));
    } else {
      fail(fields["generator"], "unknown gauge-field generator '" + generator + "'");
    }
    if (!(ctx->phi.group() == group))
      fail(theory["group"], "generator produces a " + ctx->phi.group().name() + " field");
    if (const YAML::Node ps = config["params"]; ps.IsDefined()) {
      if (!ps.IsMap()) fail(ps, "params must be a table");
      for (const auto& kv : ps)
        ctx->params[kv.first.as<std::string>()] =
            build_param(kv.first.as<std::string>(), kv.second, *ctx);
    }
  } else if (ctx->theory_name == "mcdowell_mansouri") {
    if (generator != "analytic_metric")
      fail(fields["generator"], "gravity scenarios use analytic_metric");
    ctx->geometry = std::make_unique<AnalyticGeometry>(analytic_metric(
        require<std::string>(fparams, "name"), ctx->grid,
        read<double>(fparams, "mass", 0.0), read<double>(fparams, "ell", 1.0)));
    const FieldPoint<double> gphi{levi_civita_connection(ctx->geometry->tetrad),
                                  std::nullopt, ctx->geometry->tetrad,
                                  ctx->geometry->ell, ctx->geometry->lambda_sign};
    ctx->gravity = std::make_unique<GravityData>(
        tetrad_dressing(gphi, ctx->region.signature()));
    if (ctx->region.slice()) ctx->gravity->region.set_slice(*ctx->region.slice());
  } else {
    fail(theory["name"], "unknown theory '" + ctx->theory_name + "'");
  }
  return ctx;
}

// Tasks ------------------------------------------------------------------

struct Outcome {
  Json values = Json::object();
  double residual = 0.0;
  std::string method;
};

const FieldDependentMap<cplx>& param(const Context& ctx, const YAML::Node& task,
                                     const std::string& key) {
  const std::string name = require<std::string>(task, key);
  const auto it = ctx.params.find(name);
  if (it == ctx.params.end()) fail(task[key], "unknown parameter '" + name + "'");
  return it->second;
}

const YangMillsScalar& need_ym(const Context& ctx, const YAML::Node& task) {
  if (!ctx.ym) fail(task, "task needs a Yang-Mills scenario");
  return *ctx.ym;
}

FieldTangent<cplx> tangent(const Context& ctx, const YAML::Node& task, int which) {
  const auto seeds = read<std::vector<std::uint64_t>>(task, "tangent_seeds", {11, 13});
  const std::uint64_t s = seeds.at(static_cast<std::size_t>(which) % seeds.size());
  return random_ym_tangent(ctx.phi, {read<double>(task, "tangent_amplitude", 0.5), 2,
                                     ctx.seed * 1000 + s});
}

FDOptions fd_options(const YAML::Node& task) {
  return {read<double>(task, "fd_eps", 1e-4), read<double>(task, "fd_step", 0.0),
          read<bool>(task, "fd_richardson", true)};
}

double relative(double residual, double scale) {
  return scale > 0.0 ? residual / scale : residual;
}

Outcome task_variational(const Context& ctx, const YAML::Node& task) {
  const auto v = variational_identity<cplx>(need_ym(ctx, task), ctx.phi,
                                            tangent(ctx, task, 0), fd_options(task));
  Outcome o{{{"dL", v.dL}, {"bulk", v.bulk}, {"boundary", v.boundary},
             {"absolute_residual", v.residual}, {"theta_norm", v.theta_norm},
             {"fd_error", v.fd_error}},
            relative(v.residual, v.theta_norm),
            "dL(X) by field-space central difference, relative to sum_faces |oint theta|"};
  return o;
}

Outcome task_current(const Context& ctx, const YAML::Node& task) {
  const auto c = current_identity<cplx>(need_ym(ctx, task), ctx.phi,
                                        param(ctx, task, "param")(ctx.phi));
  return {{{"absolute_residual", c.residual}, {"scale", c.scale}},
          relative(c.residual, c.scale),
          "|theta(chi^v) - d theta(chi) + E(chi)| over |theta(chi^v)|"};
}

Outcome task_noether(const Context& ctx, const YAML::Node& task) {
  const auto q = noether_charge<cplx>(need_ym(ctx, task), param(ctx, task, "param"),
                                      ctx.phi);
  Outcome o{{{"value", q.value}, {"boundary_part", q.boundary_part},
             {"bulk_part", q.bulk_part}, {"onshell_residual", q.onshell_residual}},
            0.0, ""};
  if (read<bool>(task, "expect_onshell", false)) {
    o.residual = relative(std::abs(q.bulk_part), std::abs(q.boundary_part));
    o.method = "|bulk_part| / |boundary_part|";
  } else {
    o.residual = std::abs(q.value - (q.boundary_part - q.bulk_part));
    o.method = "value - (boundary_part - bulk_part)";
  }
  return o;
}

Outcome task_presymplectic(const Context& ctx, const YAML::Node& task) {
  const auto p = presymplectic_2form<cplx>(need_ym(ctx, task), ctx.phi,
                                           tangent(ctx, task, 0),
                                           tangent(ctx, task, 1), fd_options(task));
  return {{{"kozsul", p.kozsul}, {"direct", p.direct}, {"discrepancy", p.discrepancy},
           {"fd_error", p.fd_error}},
          relative(p.discrepancy, std::abs(p.direct)),
          "Kozsul formula on theta_Sigma against the explicit 2-form kernel"};
}

Outcome task_bracket(const Context& ctx, const YAML::Node& task) {
  const auto& th = need_ym(ctx, task);
  const auto& a = param(ctx, task, "a");
  const auto& b = param(ctx, task, "b");
  const FDOptions opt = fd_options(task);
  const auto ab = poisson_bracket<cplx>(th, a, b, ctx.phi, opt);
  const auto ba = poisson_bracket<cplx>(th, b, a, ctx.phi, opt);
  return {{{"bracket", ab.bracket}, {"charge_pointwise", ab.charge_pointwise},
           {"charge_extended", ab.charge_extended}, {"residual_pointwise", ab.residual},
           {"residual_extended", ab.residual_extended},
           {"antisymmetry", std::abs(ab.bracket + ba.bracket)}, {"fd_error", ab.fd_error}},
          relative(ab.residual, std::abs(ab.bracket)),
          "Theta_Sigma(a^v, b^v) against Q([a, b]) with the pointwise bracket"};
}

Outcome task_gauge_transform(const Context& ctx, const YAML::Node& task) {
  const auto gamma = exponentiated(param(ctx, task, "param"));
  const auto t = gauge_transformed_presymplectic<cplx>(
      need_ym(ctx, task), gamma, ctx.phi, tangent(ctx, task, 0), tangent(ctx, task, 1),
      fd_options(task));
  const double rel = std::max({relative(t.theta_residual(), std::abs(t.theta_formula)),
                               relative(t.Theta_residual(), std::abs(t.Theta_formula)),
                               relative(t.E_residual(), std::abs(t.E_formula))});
  return {{{"theta_pullback", t.theta_pullback}, {"theta_formula", t.theta_formula},
           {"Theta_pullback", t.Theta_pullback}, {"Theta_formula", t.Theta_formula},
           {"E_pullback", t.E_pullback}, {"E_formula", t.E_formula},
           {"fd_error", t.fd_error}},
          rel, "pullback definition against the transformation formula, max relative"};
}

FieldSpaceConnection<cplx> connection(const Context& ctx, const YAML::Node& task) {
  const std::string kind = read<std::string>(task, "connection", "singer_dewitt");
  if (kind == "singer_dewitt")
    return singer_dewitt_connection<cplx>({read<double>(task, "cg_tolerance", 1e-12), 100000});
  if (kind == "flat_from_dressing")
    return flat_from_dressing<cplx>(
        dressing_extractor<cplx>(parse_dressing_method(
            read<std::string>(task, "extractor", "u1_polar"))),
        fd_options(task));
  (void)ctx;
  fail(task["connection"], "unknown connection '" + kind + "'");
}

Form<cplx> test_gamma(const Context& ctx, const YAML::Node& task) {
  const std::string kind = read<std::string>(task, "gamma", "constant");
  if (kind == "constant")
    return random_constant_group(ctx.grid, ctx.phi.group(), ctx.seed + 77);
  if (kind == "varying")
    return random_group_field(ctx.grid, ctx.phi.group(), {0.8, 2, ctx.seed + 78});
  fail(task["gamma"], "gamma must be constant or varying");
}

Outcome task_basic_theta(const Context& ctx, const YAML::Node& task) {
  const auto& th = need_ym(ctx, task);
  const auto omega = connection(ctx, task);
  const auto x = tangent(ctx, task, 0);
  const Form<cplx> gamma = test_gamma(ctx, task);
  const auto b0 = basic_theta_via_connection<cplx>(th, omega, ctx.phi, x);
  const auto b1 = basic_theta_via_connection<cplx>(
      th, omega, gauge_transform(ctx.phi, gamma), gauge_pushforward(x, gamma));
  return {{{"theta", b0.theta}, {"basic", b0.basic}, {"basic_projected", b0.basic_projected},
           {"basic_transformed", b1.basic}, {"connection", omega.kind},
           {"gamma", read<std::string>(task, "gamma", "constant")}},
          relative(std::abs(b1.basic - b0.basic), std::abs(b0.basic)),
          "theta^b at phi against theta^b at phi^gamma on the pushed vector"};
}

Outcome task_dressed_theta(const Context& ctx, const YAML::Node& task) {
  const auto extractor = dressing_extractor<cplx>(
      parse_dressing_method(read<std::string>(task, "extractor", "u1_polar")));
  const auto d = dressed_presymplectic<cplx>(need_ym(ctx, task), ctx.phi, extractor,
                                             tangent(ctx, task, 0), tangent(ctx, task, 1),
                                             fd_options(task));
  return {{{"theta", d.theta}, {"theta_formula", d.theta_formula},
           {"theta_direct", d.theta_direct}, {"Theta_formula", d.Theta_formula},
           {"Theta_direct", d.Theta_direct}, {"fd_error", d.fd_error}},
          relative(d.theta_residual(), std::abs(d.theta_direct)),
          "theta + Q(du u^-1) against theta(phi^u; d phi^u)"};
}

Outcome task_residual_transform(const Context& ctx, const YAML::Node& task) {
  const auto extractor = dressing_extractor<cplx>(
      parse_dressing_method(read<std::string>(task, "extractor", "u1_polar")));
  const auto xi = exponentiated(param(ctx, task, "xi"));
  const Form<cplx> gamma = test_gamma(ctx, task);
  const auto r = residual_transform<cplx>(need_ym(ctx, task), ctx.phi, extractor, xi,
                                          tangent(ctx, task, 0), fd_options(task), &gamma);
  return {{{"theta_dressed", r.theta_dressed}, {"theta_redressed", r.theta_redressed},
           {"shift_direct", r.shift_direct}, {"shift_formula", r.shift_formula},
           {"xi_invariance_residual", r.invariance_residual}},
          relative(r.residual(), std::abs(r.shift_direct)),
          "theta^{u xi} - theta^u against Q(phi^u; d xi xi^-1)"};
}

Outcome task_appendix(const Context& ctx, const YAML::Node& task) {
  const auto& th = need_ym(ctx, task);
  const VariationalOneForm<cplx> alpha = [&th](const FieldPoint<cplx>& p,
                                               const FieldTangent<cplx>& z) {
    return theta_sigma<cplx>(th, p, z);
  };
  const auto bc = check_extended_bracket(param(ctx, task, "a"), param(ctx, task, "b"),
                                         ctx.phi, alpha, tangent(ctx, task, 2),
                                         fd_options(task));
  Outcome o;
  o.values["relations"] = Json::array();
  for (const auto& r : bc.relations) {
    o.values["relations"].push_back({{"relation", r.relation}, {"applied_to", r.applied_to},
                                     {"lhs", r.lhs}, {"rhs", r.rhs},
                                     {"residual", r.residual}, {"fd_error", r.fd_error}});
    o.residual = std::max(o.residual, relative(r.residual, r.scale));
  }
  o.values["equivariant_deviation"] = bc.equivariant_deviation;
  o.method = "max relative residual of the commutation relations";
  return o;
}

Outcome task_formula1(const Context& ctx, const YAML::Node& task) {
  const auto& th = need_ym(ctx, task);
  const VariationalOneForm<cplx> alpha = [&th](const FieldPoint<cplx>& p,
                                               const FieldTangent<cplx>& z) {
    return theta_sigma<cplx>(th, p, z);
  };
  const auto f = check_formula1(alpha, connection(ctx, task), ctx.phi,
                                tangent(ctx, task, 0), tangent(ctx, task, 1),
                                fd_options(task));
  return {{{"lhs", f.lhs}, {"rhs_exact", f.rhs_exact}, {"rhs_curvature", f.rhs_omega},
           {"curvature_norm", f.curvature_norm}, {"fd_error", f.fd_error}},
          f.residual, "absolute |d alpha(X^h, Y^h) - d alpha^h(X, Y) - alpha(Omega^v)|"};
}

Outcome task_ab_charge(const Context& ctx, const YAML::Node& task, bool strict) {
  const auto& th = need_ym(ctx, task);
  const auto split = background_split(ctx.phi.A, zero_like(ctx.phi.A), ctx.region,
                                      read<double>(task, "background_tolerance", 1e-6),
                                      strict);
  const auto ab = ab_charge(th, param(ctx, task, "param")(ctx.phi), split,
                            read<double>(task, "killing_tolerance", 1e-8));
  Outcome o{{{"value", ab.charge.value}, {"bulk_current", ab.bulk_current},
             {"stokes_discrepancy", ab.stokes_discrepancy},
             {"background_part", ab.background_part},
             {"killing_residual", ab.charge.killing_residual}, {"notes", ab.charge.notes}},
            0.0, ""};
  if (task["oracle"].IsDefined()) {
    const double oracle = task["oracle"].as<double>();
    o.values["oracle"] = oracle;
    o.residual = std::abs(ab.charge.value / oracle - 1.0);
    o.method = "relative deviation from the enclosed-source oracle";
  } else {
    o.residual = relative(ab.stokes_discrepancy, std::abs(ab.charge.value));
    o.method = "boundary charge against bulk current, relative";
  }
  return o;
}

Outcome task_komar(const Context& ctx, const YAML::Node& task) {
  if (!ctx.gravity) fail(task, "komar needs a gravity scenario");
  const KomarSurface surface =
      parse_komar_surface(read<std::string>(task, "surface", "outer"));
  const Form<double> zeta = time_translation(ctx.grid);
  const auto q = komar_charge(*ctx.gravity, zeta, surface);
  const auto dg = dressed_gravity(*ctx.gravity);
  const auto dq = dressed_charge<double>(dg.theory, killing_gradient(ctx.gravity->Gamma, zeta),
                                         dg.point, komar_faces(surface));
  Outcome o{{{"value", q.value}, {"killing_residual", q.killing_residual},
             {"dressed_charge_boundary", dq.boundary_part},
             {"two_path_difference", std::abs(dq.boundary_part - q.value)},
             {"surface", read<std::string>(task, "surface", "outer")},
             {"geometry", ctx.geometry->name}, {"notes", q.notes}},
            0.0, ""};
  const double oracle = read<double>(task, "oracle", 0.0);
  o.values["oracle"] = oracle;
  if (task["reference_scale"].IsDefined()) {
    const double scale = task["reference_scale"].as<double>();
    o.values["reference_scale"] = scale;
    o.residual = std::abs(q.value) / std::abs(scale);
    o.method = "|Q| over the Schwarzschild-scale charge";
  } else {
    o.residual = std::abs(q.value / oracle - 1.0);
    o.method = "relative deviation from the quadrature oracle";
  }
  return o;
}

struct TaskSpec {
  const char* category;
  std::function<Outcome(const Context&, const YAML::Node&, bool)> run;
};

const std::map<std::string, TaskSpec>& task_table() {
  static const std::map<std::string, TaskSpec> table = {
      {"variational_identity", {"identity", [](auto& c, auto& t, bool) { return task_variational(c, t); }}},
      {"current_identity", {"identity", [](auto& c, auto& t, bool) { return task_current(c, t); }}},
      {"presymplectic", {"identity", [](auto& c, auto& t, bool) { return task_presymplectic(c, t); }}},
      {"gauge_transform", {"identity", [](auto& c, auto& t, bool) { return task_gauge_transform(c, t); }}},
      {"appendix_relations", {"identity", [](auto& c, auto& t, bool) { return task_appendix(c, t); }}},
      {"formula1", {"identity", [](auto& c, auto& t, bool) { return task_formula1(c, t); }}},
      {"basic_theta", {"identity", [](auto& c, auto& t, bool) { return task_basic_theta(c, t); }}},
      {"noether_charge", {"charge", [](auto& c, auto& t, bool) { return task_noether(c, t); }}},
      {"ab_charge", {"charge", [](auto& c, auto& t, bool s) { return task_ab_charge(c, t, s); }}},
      {"bracket", {"bracket", [](auto& c, auto& t, bool) { return task_bracket(c, t); }}},
      {"dressed_theta", {"dress", [](auto& c, auto& t, bool) { return task_dressed_theta(c, t); }}},
      {"residual_transform", {"dress", [](auto& c, auto& t, bool) { return task_residual_transform(c, t); }}},
      {"komar", {"komar", [](auto& c, auto& t, bool) { return task_komar(c, t); }}},
  };
  return table;
}

double tolerance_for(const YAML::Node& config, const YAML::Node& task,
                     const std::string& type) {
  if (task["tolerance"].IsDefined()) return task["tolerance"].as<double>();
  const YAML::Node tol = config["tolerances"];
  if (!tol.IsDefined()) return 1e-6;
  if (tol[type].IsDefined()) return tol[type].as<double>();
  return read<double>(tol, "default", 1e-6);
}

void validate_tasks(const YAML::Node& config) {
  const YAML::Node tasks = config["tasks"];
  if (!tasks.IsDefined() || tasks.IsNull()) return;
  if (!tasks.IsSequence()) fail(tasks, "tasks must be a list");
  for (const auto& t : tasks) {
    const std::string type = require<std::string>(t, "type");
    if (!task_table().count(type)) fail(t["type"], "unknown task type '" + type + "'");
    for (const char* key : {"param", "a", "b", "xi"}) {
      if (!t[key].IsDefined()) continue;
      const std::string name = t[key].as<std::string>();
      const YAML::Node params = config["params"];
      if (!params.IsMap() || !params[name].IsDefined())
        fail(t[key], "unknown parameter '" + name + "'");
    }
  }
  if (const YAML::Node r = config["refine"]; r.IsDefined()) {
    const auto ladder = read<std::vector<int>>(r, "ladder", {});
    for (std::size_t i = 1; i < ladder.size(); ++i)
      if (ladder[i] <= ladder[i - 1]) fail(r["ladder"], "ladder must increase strictly");
  }
}

YAML::Node echo_config(YAML::Node config, const RunOptions& options) {
  YAML::Node echo = YAML::Clone(config);
  if (options.seed) echo["seed"] = *options.seed;
  if (options.resolution) {
    // Record the effective resolution so the echo re-runs identically.
    const Region r = build_region(echo["region"], options.resolution,
                                  echo["refine"].IsDefined() ? echo["refine"]["axes"]
                                                             : YAML::Node());
    std::vector<int> cells;
    for (int a = 0; a < r.dim(); ++a) cells.push_back(r.grid().cells[a]);
    echo["region"]["resolution"] = cells;
    echo["region"]["resolution"].SetStyle(YAML::EmitterStyle::Flow);
  }
  return echo;
}

Json run_checked(const YAML::Node& raw, const RunOptions& options);

Json run_loaded(const YAML::Node& raw, const RunOptions& options) {
  try {
    return run_checked(raw, options);
  } catch (const YAML::Exception& e) {
    throw ConfigError("bad scenario value at line " + std::to_string(e.mark.line + 1) + ": " +
                      e.msg);
  }
}

Json run_checked(const YAML::Node& raw, const RunOptions& options) {
  validate_tasks(raw);
  const YAML::Node config = echo_config(raw, options);
  Json report;
  report["meta"] = {{"tool", "cps"},
                    {"version", tool_version},
                    {"scenario", read<std::string>(config, "name", "unnamed")},
                    {"seed", options.seed ? *options.seed
                                          : read<std::uint64_t>(config, "seed", 1)},
                    {"category", options.category.empty() ? "all" : options.category},
                    {"sign_conventions",
                     "signature (+,-,...), eps_0123 = +1, theta_Sigma on x^axis = const "
                     "with outward boundary orientation"}};
  report["config_echo"] = to_json(config);
  report["results"] = Json::array();

  const YAML::Node tasks = config["tasks"];
  bool all_pass = true;
  if (tasks.IsDefined() && tasks.size() > 0) {
    std::unique_ptr<Context> ctx;
    std::string context_error;
    try {
      ctx = build_context(config, options);
    } catch (const Error& e) {
      if (options.strict) throw;
      context_error = e.what();
    }
    for (const auto& t : tasks) {
      const std::string type = t["type"].as<std::string>();
      const TaskSpec& spec = task_table().at(type);
      if (!options.category.empty() && options.category != spec.category) continue;
      const bool strict = options.strict || read<bool>(t, "strict", false);
      Json r;
      r["task"] = type;
      r["label"] = read<std::string>(t, "label", type);
      r["category"] = spec.category;
      r["strict"] = strict;
      const double tol = tolerance_for(config, t, type);
      r["tolerance"] = tol;
      try {
        if (!ctx) throw ConfigError(context_error);
        const Outcome o = spec.run(*ctx, t, strict);
        r["method"] = o.method;
        r["values"] = o.values;
        r["residual"] = o.residual;
        r["pass"] = std::isfinite(o.residual) && o.residual <= tol;
      } catch (const Error& e) {
        if (options.strict) throw;
        r["error"] = e.what();
        r["pass"] = false;
      }
      all_pass = all_pass && r["pass"].get<bool>();
      report["results"].push_back(std::move(r));
    }
  }
  report["pass"] = all_pass;
  return report;
}

YAML::Node load_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open scenario file '" + path + "'");
  } catch (const YAML::ParserException& e) {
    throw ConfigError("parse error in '" + path + "' at line " +
                      std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

}  // namespace

Json run_scenario(const std::string& path, const RunOptions& options) {
  return run_loaded(load_file(path), options);
}

Json run_scenario_text(const std::string& text, const RunOptions& options) {
  YAML::Node node;
  try {
    node = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("parse error at line " + std::to_string(e.mark.line + 1) +
                      ": " + e.msg);
  }
  return run_loaded(node, options);
}

std::optional<double> fit_order(const std::vector<double>& h,
                                const std::vector<double>& residual) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size() && i < residual.size(); ++i)
    if (residual[i] > 0.0 && h[i] > 0.0) {
      x.push_back(std::log(h[i]));
      y.push_back(std::log(residual[i]));
    }
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Json convergence_study(const std::string& path, const RunOptions& options) {
  const YAML::Node raw = load_file(path);
  validate_tasks(raw);
  const YAML::Node refine = raw["refine"];
  const auto ladder = read<std::vector<int>>(refine, "ladder", {});
  if (ladder.size() < 3) fail(refine, "convergence study needs a ladder of at least 3");
  const double min_order = read<double>(refine, "min_order", 1.8);
  const double floor = read<double>(refine, "exact_floor", exact_floor);

  Json report;
  std::vector<Json> levels;
  for (int n : ladder) {
    RunOptions o = options;
    o.resolution = std::vector<int>{n};
    levels.push_back(run_loaded(raw, o));
  }
  report["meta"] = levels.front()["meta"];
  report["meta"]["study"] = "convergence";
  report["meta"]["ladder"] = ladder;
  report["config_echo"] = to_json(raw);
  report["results"] = Json::array();
  bool all_pass = true;
  const std::size_t count = levels.front()["results"].size();
  for (std::size_t i = 0; i < count; ++i) {
    const Json& first = levels.front()["results"][i];
    Json r;
    r["task"] = first["task"];
    r["label"] = first["label"];
    r["category"] = first["category"];
    r["strict"] = first["strict"];
    r["method"] = "least-squares slope of log residual against log h";
    r["tolerance"] = min_order;
    std::vector<double> h, res;
    bool ok = true;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const Json& lr = levels[l]["results"][i];
      if (!lr.contains("residual")) {
        ok = false;
        r["error"] = lr.value("error", std::string("no residual"));
        break;
      }
      h.push_back(1.0 / ladder[l]);
      res.push_back(lr["residual"].get<double>());
    }
    r["residuals"] = res;
    bool pass = false;
    if (ok) {
      const double worst = *std::max_element(res.begin(), res.end());
      if (worst < floor) {
        r["order"] = "exact";
        pass = true;
      } else if (const auto slope = fit_order(h, res)) {
        r["order"] = *slope;
        pass = *slope >= min_order;
      } else {
        r["order"] = nullptr;
      }
    }
    r["pass"] = pass;
    all_pass = all_pass && pass;
    report["results"].push_back(std::move(r));
  }
  report["pass"] = all_pass;
  return report;
}

bool strict_tasks_pass(const Json& report) {
  for (const auto& r : report["results"])
    if (r.value("strict", false) && !r.value("pass", false)) return false;
  return true;
}

std::vector<ScenarioInfo> list_scenarios(const std::string& directory) {
  std::vector<ScenarioInfo> out;
  if (!std::filesystem::is_directory(directory)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    const auto ext = entry.path().extension();
    if (ext != ".yaml" && ext != ".yml") continue;
    const YAML::Node node = load_file(entry.path().string());
    out.push_back({entry.path().filename().string(),
                   read<std::string>(node, "name", entry.path().stem().string()),
                   read<std::string>(node, "description", "")});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.file < b.file; });
  return out;
}

}  // namespace cps
