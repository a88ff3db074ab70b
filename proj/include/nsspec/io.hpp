#pragma once

#include <string>
#include <vector>

#include "nsspec/sampling.hpp"
#include "nsspec/spectral.hpp"
#include "nsspec/types.hpp"

namespace nsspec::io {

// CSV/JSON serialization. Numeric fields are written with 17 significant
// digits so round-trips and cross-thread-count comparisons are byte-exact.

/// Header "# P=<p> K=<k> seed=<s>" (plus " M=<m> K0=<k0>" after subsampling),
/// then one realization per row.
void write_ensemble_csv(const std::string& path, const Ensemble& ensemble);
Ensemble read_ensemble_csv(const std::string& path);

/// Columns "omega,value". Spectrum invariants are checked before writing.
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);
Spectrum read_spectrum_csv(const std::string& path);

/// Columns "lag,value".
void write_lag_csv(const std::string& path, const LagFunction& lagfn);
LagFunction read_lag_csv(const std::string& path);

/// Columns "u,v,re,im", row-major over (u, v). Hermitian symmetry is checked
/// before writing when the grids match.
void write_bispectrum_csv(const std::string& path, const BiSpectrum& bispectrum);

/// Keys "B", "M", "fraction".
void write_plan_json(const std::string& path, const SamplingPlan& plan);
SamplingPlan read_plan_json(const std::string& path);

/// Keys "ar", "ma", "variance".
void write_filter_profile_json(const std::string& path, const std::vector<double>& ar,
                               const std::vector<double>& ma,
                               const std::vector<double>& variance);
void read_filter_profile_json(const std::string& path, std::vector<double>& ar,
                              std::vector<double>& ma, std::vector<double>& variance);

void write_assumption_report_json(const std::string& path, const AssumptionReport& report);

/// "N,sup_distance" rows.
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

std::string format_double(double v);

}  // namespace nsspec::io
