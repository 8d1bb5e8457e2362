#include "sccm/report.hpp"

#include <sstream>

#include "json.hpp"
#include "sccm/io.hpp"

namespace sccm::report {

using nlohmann::json;

namespace {

json to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const CrossMapCurve& c) {
  return {{"source", c.source_id}, {"target", c.target_id}, {"library_sizes", c.library_sizes}, {"rho", c.rho}};
}

json to_json(const ConvergenceStats& s) {
  return {{"converged", s.converged},   {"final_rho", s.final_rho},     {"head_mean", s.head_mean},
          {"tail_mean", s.tail_mean},   {"tail_slope", s.tail_slope},   {"above_floor", s.above_floor},
          {"rising", s.rising},         {"plateaued", s.plateaued}};
}

json verdict_object(const CausalVerdict& v, const std::string& x, const std::string& y) {
  return {{"rho_xy", v.rho_xy_final},
          {"rho_yx", v.rho_yx_final},
          {"converged_xy", v.converged_xy},
          {"converged_yx", v.converged_yx},
          {"verdict", direction_label(v.verdict, x, y)},
          {"direction", std::string(to_string(v.verdict))},
          {"thresholds", {{"floor", v.rule.floor}, {"plateau_tol", v.rule.plateau_tol}}}};
}

json to_json(const SymmetryReport& s) {
  return {{"score", s.score}, {"threshold", s.threshold}, {"is_symmetric", s.is_symmetric}, {"center", to_json(s.center)}};
}

json to_json(const RecurrenceResult& r) {
  return {{"recurrent", r.recurrent},       {"fraction", r.fraction},       {"epsilon", r.epsilon},
          {"min_separation", r.min_separation}, {"points_used", r.points_used}, {"status", r.status}};
}

json sweep_json(const SweepResult& s) { return {{"xy", to_json(s.xy)}, {"yx", to_json(s.yx)}}; }

json pair_json(const std::optional<SkillPair>& p) {
  if (!p) return nullptr;
  return json::array({p->first, p->second});
}

json direction_json(const std::optional<Direction>& d) {
  if (!d) return nullptr;
  return std::string(to_string(*d));
}

std::string cell(const std::optional<SkillPair>& p, bool first) {
  if (!p) return "";
  return io::format_double(first ? p->first : p->second);
}

}  // namespace

std::string curve_csv(const SweepResult& sweep) {
  if (sweep.xy.library_sizes != sweep.yx.library_sizes)
    throw argument_error("curve_csv: the two directions use different library sizes");
  std::ostringstream os;
  os << "L,rho_xy,rho_yx\n";
  for (std::size_t i = 0; i < sweep.xy.rho.size(); ++i)
    os << sweep.xy.library_sizes[i] << ',' << io::format_double(sweep.xy.rho[i]) << ','
       << io::format_double(sweep.yx.rho[i]) << '\n';
  return os.str();
}

std::string verdict_json(const CausalVerdict& verdict, const std::string& name_x, const std::string& name_y) {
  return verdict_object(verdict, name_x, name_y).dump(2) + "\n";
}

std::string causal_report_json(const CausalReport& r) {
  json j;
  j["method"] = std::string(to_string(r.method));
  j["pair"] = {r.name_a, r.name_b};
  j["embedding"] = {{r.name_a, {{"tau", r.params_a.tau}, {"m", r.params_a.m}}},
                    {r.name_b, {{"tau", r.params_b.tau}, {"m", r.params_b.m}}}};
  j["seed"] = r.config.seed;
  if (r.symmetry_a.center.size() > 0)
    j["symmetry"] = {{r.name_a, to_json(r.symmetry_a)}, {r.name_b, to_json(r.symmetry_b)}};
  if (r.recurrence_a && r.recurrence_b)
    j["recurrence"] = {{r.name_a, to_json(*r.recurrence_a)}, {r.name_b, to_json(*r.recurrence_b)}};
  if (r.segmented_manifold) j["segmented"] = *r.segmented_manifold == 0 ? r.name_a : r.name_b;
  json segs = json::array();
  for (const auto& s : r.segments)
    segs.push_back({{"size", s.size},
                    {"rho_ab", s.sweep.xy.final_rho()},
                    {"rho_ba", s.sweep.yx.final_rho()},
                    {"curves", sweep_json(s.sweep)}});
  j["segments"] = segs;
  j["rho_ab"] = r.rho_ab;
  j["rho_ba"] = r.rho_ba;
  j["curves"] = sweep_json(r.combined);
  j["verdict"] = verdict_object(r.verdict, r.name_a, r.name_b);
  j["verdict"]["stats_xy"] = to_json(r.verdict.stats_xy);
  j["verdict"]["stats_yx"] = to_json(r.verdict.stats_yx);
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string observability_json(const ObservabilityReport& r) {
  json j = {{"state", to_json(r.state)},
            {"singular_values", to_json(r.singular_values)},
            {"rank", r.numerical_rank},
            {"tol", r.rank_tol}};
  return j.dump(2) + "\n";
}

std::string recurrence_json(const RecurrenceResult& r) { return to_json(r).dump(2) + "\n"; }

std::string symmetry_json(const SymmetryReport& s) { return to_json(s).dump(2) + "\n"; }

std::string manifold_csv(const ShadowManifold& m) {
  std::ostringstream os;
  os << "idx";
  for (Index c = 0; c < m.dim(); ++c) os << ",c" << c;
  os << '\n';
  for (Index i = 0; i < m.size(); ++i) {
    os << m.time_index[static_cast<std::size_t>(i)];
    for (Index c = 0; c < m.dim(); ++c) os << ',' << io::format_double(m.points(i, c));
    os << '\n';
  }
  return os.str();
}

std::string indexed_csv(const std::string& key, const Vector& values, int first_key) {
  std::ostringstream os;
  os << key << ",value\n";
  for (Index i = 0; i < values.size(); ++i) os << first_key + i << ',' << io::format_double(values[i]) << '\n';
  return os.str();
}

std::string matrix_csv(const Matrix& values) {
  std::ostringstream os;
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) os << (j ? "," : "") << io::format_double(values(i, j));
    os << '\n';
  }
  return os.str();
}

std::string recurrence_matrix_csv(const Matrix& d, double epsilon) {
  std::ostringstream os;
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j < d.cols(); ++j) os << (j ? "," : "") << (d(i, j) < epsilon ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "table,system,pair,noise,extended,ref_ccm_ab,ref_ccm_ba,ccm_ab,ccm_ba,ref_sccm_ab,ref_sccm_ba,sccm_ab,sccm_ba,"
        "ref_ccm_verdict,ccm_verdict,ref_sccm_verdict,sccm_verdict,sccm_method,verdict_match,bands_ok,error\n";
  for (const auto& r : rows) {
    os << r.table << ',' << r.system << ',' << r.var_a << ':' << r.var_b << ',' << r.noise << ','
       << (r.extended ? 1 : 0) << ',' << cell(r.reference_ccm, true) << ',' << cell(r.reference_ccm, false) << ','
       << io::format_double(r.measured_ccm.first) << ',' << io::format_double(r.measured_ccm.second) << ','
       << cell(r.reference_sccm, true) << ',' << cell(r.reference_sccm, false) << ','
       << io::format_double(r.measured_sccm.first) << ',' << io::format_double(r.measured_sccm.second) << ','
       << (r.reference_ccm_verdict ? to_string(*r.reference_ccm_verdict) : "") << ',' << to_string(r.ccm_verdict)
       << ',' << (r.reference_sccm_verdict ? to_string(*r.reference_sccm_verdict) : "") << ','
       << to_string(r.sccm_verdict) << ',' << to_string(r.sccm_method) << ',' << (r.verdict_match ? 1 : 0) << ','
       << (r.bands_ok() ? 1 : 0) << ',';
    // Errors may contain commas; quote them.
    std::string e = r.error;
    for (std::size_t p = 0; (p = e.find('"', p)) != std::string::npos; p += 2) e.insert(p, "\"");
    if (!e.empty()) os << '"' << e << '"';
    os << '\n';
  }
  return os.str();
}

std::string bench_json(const std::vector<BenchRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    json cells = json::array();
    for (const auto& c : r.cells)
      cells.push_back({{"reference", c.reference}, {"measured", c.measured}, {"tolerance", c.tolerance},
                       {"within", c.within()}});
    json j = {{"table", r.table},
              {"system", r.system},
              {"pair", {r.var_a, r.var_b}},
              {"noise", r.noise},
              {"extended", r.extended},
              {"reference_ccm", pair_json(r.reference_ccm)},
              {"reference_sccm", pair_json(r.reference_sccm)},
              {"reference_ccm_verdict", direction_json(r.reference_ccm_verdict)},
              {"reference_sccm_verdict", direction_json(r.reference_sccm_verdict)},
              {"measured_ccm", json::array({r.measured_ccm.first, r.measured_ccm.second})},
              {"measured_sccm", json::array({r.measured_sccm.first, r.measured_sccm.second})},
              {"ccm_verdict", std::string(to_string(r.ccm_verdict))},
              {"sccm_verdict", std::string(to_string(r.sccm_verdict))},
              {"sccm_method", std::string(to_string(r.sccm_method))},
              {"verdict_match", r.verdict_match},
              {"bands_ok", r.bands_ok()},
              {"cells", cells},
              {"warnings", r.warnings},
              {"skipped", r.skipped},
              {"error", r.error}};
    if (r.repeats > 1) {
      j["repeats"] = r.repeats;
      j["mean_ccm"] = pair_json(r.mean_ccm);
      j["mean_sccm"] = pair_json(r.mean_sccm);
    }
    a.push_back(std::move(j));
  }
  return json{{"rows", a}, {"passed", bench_passed(rows)}}.dump(2) + "\n";
}

std::string parameter_sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream os;
  os << "axis,tau,m,rho_ab,rho_ba,verdict\n";
  for (const auto& p : points)
    os << p.axis << ',' << p.tau << ',' << p.m << ',' << io::format_double(p.rho_ab) << ','
       << io::format_double(p.rho_ba) << ',' << to_string(p.verdict) << '\n';
  return os.str();
}

std::string parameter_sweep_json(const std::vector<SweepPoint>& points) {
  json a = json::array();
  for (const auto& p : points)
    a.push_back({{"axis", p.axis}, {"tau", p.tau}, {"m", p.m}, {"rho_ab", p.rho_ab}, {"rho_ba", p.rho_ba},
                 {"verdict", std::string(to_string(p.verdict))}});
  return a.dump(2) + "\n";
}

}  // namespace sccm::report
