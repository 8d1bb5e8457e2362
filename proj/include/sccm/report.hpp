#pragma once

#include <string>
#include <vector>

#include "sccm/bench.hpp"
#include "sccm/diagnostics.hpp"
#include "sccm/symmetry.hpp"

// Text serialisations for the CLI. JSON is pretty-printed with two spaces;
// CSV numbers use 17 significant digits.
namespace sccm::report {

/// `L,rho_xy,rho_yx`.
std::string curve_csv(const SweepResult& sweep);

/// {rho_xy, rho_yx, converged_xy, converged_yx, verdict, thresholds}.
/// `verdict` is the display label built from the two names.
std::string verdict_json(const CausalVerdict& verdict, const std::string& name_x = "X",
                         const std::string& name_y = "Y");

/// Full segment-CCM outcome: method, symmetry scores, recurrence results,
/// per-segment skills and curves, combined curve, verdict, warnings.
std::string causal_report_json(const CausalReport& report);

/// {state, singular_values, rank, tol}.
std::string observability_json(const ObservabilityReport& report);

std::string recurrence_json(const RecurrenceResult& result);
std::string symmetry_json(const SymmetryReport& report);

/// `idx,c0,c1,...` with idx the sample index of the newest coordinate.
std::string manifold_csv(const ShadowManifold& manifold);

/// Two columns: `<key>,value`, with keys first_key, first_key + 1, ...
std::string indexed_csv(const std::string& key, const Vector& values, int first_key);

/// Full matrix, no header.
std::string matrix_csv(const Matrix& values);

/// 0/1 matrix of d < epsilon, no header.
std::string recurrence_matrix_csv(const Matrix& distances, double epsilon);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_json(const std::vector<BenchRow>& rows);

/// `axis,tau,m,rho_ab,rho_ba,verdict`.
std::string parameter_sweep_csv(const std::vector<SweepPoint>& points);
std::string parameter_sweep_json(const std::vector<SweepPoint>& points);

}  // namespace sccm::report
