#include "graphlim/serialize.hpp"

#include <cmath>

namespace graphlim {

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json json_of(const Rational& r) { return Json{{"num", r.num()}, {"den", r.den()}}; }

Json json_of(const StatVector& s) {
  Json classes = Json::object();
  for (const auto& [key, freq] : s.classes()) {
    classes[key.hex()] = Json{{"num", freq.num()}, {"den", freq.den()}, {"radius", key.radius}, {"ball_size", key.size}};
  }
  return Json{{"r_max", s.r_max},
              {"vertex_count", s.vertex_count},
              {"degree_bound", s.degree_bound},
              {"class_count", classes.size()},
              {"classes", classes}};
}

Json json_of(const WeakCauchyProfile& p) {
  Json freqs = Json::array();
  for (const auto& f : p.limit_frequencies) {
    freqs.push_back(Json{{"class", f.key.hex()},
                         {"radius", f.key.radius},
                         {"last", f.last},
                         {"spread", f.spread},
                         {"stable", f.stable}});
  }
  return Json{{"r_max", p.r_max},
              {"sizes", p.sizes},
              {"consecutive", p.consecutive},
              {"tail_sup", p.tail_sup},
              {"limit_frequencies", freqs}};
}

Json json_of(const Partition& p, bool include_cut_edges) {
  Json classes = Json::array();
  for (const auto& [key, vertices] : p.class_vertices) {
    classes.push_back(Json{{"class", key.hex()},
                           {"size", key.size},
                           {"vertices", vertices},
                           {"components", p.class_components.at(key)},
                           {"c", json_of(p.c(key))},
                           {"gamma", json_of(p.gamma(key))}});
  }
  Json out{{"strategy", p.strategy},
           {"vertex_count", p.vertex_count},
           {"edge_count", p.edge_count},
           {"degree_bound", p.degree_bound},
           {"size_bound", p.size_bound},
           {"max_component_size", p.max_component_size()},
           {"component_count", p.components.size()},
           {"cut_edge_count", p.cut_edges.size()},
           {"cut_fraction", json_of(p.cut_fraction())},
           {"cut_fraction_value", p.cut_fraction().to_double()},
           {"classes", classes}};
  if (include_cut_edges) {
    Json cut = Json::array();
    for (const auto& [u, v] : p.cut_edges) cut.push_back(Json::array({u, v}));
    out["cut_edges"] = cut;
  }
  return out;
}

Json json_of(const DistanceEstimate& e) {
  Json out{{"value", e.value}, {"kind", to_string(e.kind)}};
  if (e.permutation) out["permutation"] = e.permutation->image();
  if (e.q) out["q"] = *e.q;
  if (e.p) out["p"] = *e.p;
  if (!e.trials.empty()) {
    Json trials = Json::array();
    for (const auto& t : e.trials) {
      trials.push_back(Json{{"q", t.q}, {"p", t.p}, {"vertex_count", t.vertex_count}, {"value", t.value},
                            {"kind", to_string(t.kind)}});
    }
    out["trials"] = trials;
  }
  return out;
}

Json json_of(const PartitionBound& b) {
  return Json{{"value", b.value},       {"beta", b.beta}, {"class_count", b.class_count},
              {"size_bound", b.size_bound}, {"degree_bound", b.degree_bound}, {"eps", b.eps}};
}

Json json_of(const StrongCauchyProfile& p) {
  Json pairs = Json::array();
  for (const auto& pr : p.pairs) {
    Json j{{"i", pr.i}, {"j", pr.j}, {"direct", pr.direct}, {"best", pr.best}};
    if (pr.partition) j["partition"] = *pr.partition;
    pairs.push_back(j);
  }
  return Json{{"sizes", p.sizes}, {"pairs", pairs}, {"tail_sup", p.tail_sup}};
}

Json json_of(const NormedValue& v) {
  if (v.is_scalar()) return Json{{"type", "scalar"}, {"value", json_number(v.scalar())}};
  const auto& f = v.step();
  return Json{{"type", "step"}, {"base", f.base()}, {"breakpoints", f.breakpoints()}, {"values", f.values()},
              {"sup_norm", f.sup_norm()}};
}

Json json_of(const AlmostAdditiveReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"pair", c.pair},
                          {"p", c.p},
                          {"q", c.q},
                          {"vertex_count", c.vertex_count},
                          {"lhs", c.lhs},
                          {"delta", c.delta},
                          {"delta_kind", to_string(c.delta_kind)},
                          {"rhs", c.rhs},
                          {"pass", c.pass}});
  }
  return Json{{"constant", r.constant},
              {"violations", r.violations},
              {"empirical_constant", json_number(r.empirical_constant)},
              {"checks", checks}};
}

Json json_of(const NormalizedLimitReport& r) {
  Json normalized = Json::array();
  for (const auto& v : r.normalized) normalized.push_back(json_of(v));
  Json out{{"sizes", r.sizes},
           {"estimate", json_of(r.estimate)},
           {"profile", r.profile},
           {"tolerance", r.tolerance},
           {"converged", r.converged_from.has_value()},
           {"normalized", normalized}};
  if (r.converged_from) out["converged_from"] = *r.converged_from;
  return out;
}

Json json_of(const SubadditiveReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.axioms) {
    Json violations = Json::array();
    for (const auto& v : a.violations) violations.push_back(Json{{"sample", v.sample}, {"detail", v.detail}});
    axioms.push_back(Json{{"axiom", a.axiom},
                          {"checks", a.checks},
                          {"skipped", a.skipped},
                          {"passed", a.passed()},
                          {"violations", violations}});
  }
  return Json{{"mode", r.strict ? "strict" : "induced"}, {"passed", r.passed()}, {"axioms", axioms}};
}

Json json_of(const SubadditiveLimitReport& r) {
  return Json{{"sizes", r.sizes},
              {"normalized", r.normalized},
              {"lambda", json_number(r.lambda)},
              {"minus_infinity", r.minus_infinity},
              {"tail_inf", r.tail_inf},
              {"tail_sup", r.tail_sup},
              {"gap", r.gap}};
}

Json json_of(const FeketeReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"m", v.m}, {"n", v.n}, {"a_m_plus_n", v.sum}, {"a_m_plus_a_n", v.bound}});
  }
  return Json{{"infimum", r.infimum},
              {"infimum_at", r.infimum_at},
              {"last_ratio", r.last_ratio},
              {"tail_slope", r.tail_slope},
              {"subadditive", r.subadditive()},
              {"violation_count", r.violation_count},
              {"violations", violations}};
}

Json json_of(const SpectralCDF& cdf, bool include_jumps) {
  Json out{{"dimension", cdf.dimension()},
           {"mode", cdf.is_dense() ? "dense" : "inertia"},
           {"spectral_bound", cdf.spectral_bound()}};
  if (cdf.is_dense()) {
    out["distinct_eigenvalues"] = cdf.jump_points().size();
    if (include_jumps) {
      out["jumps"] = cdf.jump_points();
      out["cumulative"] = cdf.cumulative_counts();
    }
  }
  return out;
}

Json json_of(const IdsReport& r) {
  Json members = Json::array();
  for (const auto& m : r.members) {
    Json j{{"vertex_count", m.vertex_count}, {"cdf", json_of(m.cdf)}, {"vanishes_on_member", m.vanishes_on_member}};
    if (m.reference_distance) j["reference_distance"] = *m.reference_distance;
    members.push_back(j);
  }
  Json out{{"kernel", r.kernel},
           {"members", members},
           {"consecutive", r.consecutive},
           {"tail_sup", r.tail_sup},
           {"null_sequence", r.null_sequence}};
  if (r.reference) out["reference"] = *r.reference;
  return out;
}

}  // namespace graphlim
