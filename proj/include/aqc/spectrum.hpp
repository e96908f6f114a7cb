#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <vector>

#include "aqc/hamiltonian.hpp"

namespace aqc {

struct SpectrumPoint {
  double s = 0.0;
  std::vector<double> energies;             // lowest m, nondecreasing
  std::vector<Eigen::VectorXd> eigenvectors;  // phase: largest component > 0
  std::vector<double> residuals;            // ||H v - E v|| per pair
  bool converged = true;
};

struct SpectrumOptions {
  std::size_t dense_dim_max = 4096;  // iterative solver above this
  bool want_vectors = true;
  int lanczos_max_iter = 500;
  double lanczos_tol = 1e-10;  // relative to the spectral scale
};

struct GapScanRow {
  double s = 0.0;
  std::vector<double> energies;
  double gap = 0.0;
  double matrix_element = 0.0;  // |<1,s| dH/ds |0,s>|
};

struct GapReport {
  double g = 0.0;        // min over the scan of E_1 - E_0
  double s_star = 0.0;   // argmin
  double e_script = 0.0; // max over the scan of |<1,s| dH/ds |0,s>|
  double bound = 0.0;    // e_script / g^2
  bool degenerate = false;
  double degenerate_at = 0.0;
  std::vector<GapScanRow> rows;  // the uniform grid, for CSV export
};

/// Lowest m eigenpairs of H(s): dense solver up to dense_dim_max, Lanczos
/// with full reorthogonalization above.
SpectrumPoint instantaneous_spectrum(const SubspaceHamiltonian& h, double s, int m,
                                     const SpectrumOptions& opts = {});

struct GapScanOptions {
  int grid_points = 101;
  bool refine = true;
  double refine_ds = 1e-4;        // refinement stops once the bracket is this wide
  int csv_levels = 2;             // energies per CSV row
  SpectrumOptions spectrum;
  double degeneracy_eps = 1e-10;
};

/// Uniform scan of E_0, E_1 over s in [0,1], golden-section refinement
/// around the smallest bracketed gap; the transition matrix element is
/// evaluated at every point visited. A ground-state degeneracy anywhere is
/// reported instead of a gap.
GapReport gap_scan(const SubspaceHamiltonian& h, const GapScanOptions& opts = {});

/// CSV: s,E_0,...,E_{m-1},gap,matrix_element per grid row.
void write_gap_csv(const GapReport& report, std::ostream& os);

namespace detail {

/// Shared scan machinery: `point_at(s, m)` produces the lowest-m spectrum of
/// any one-parameter Hamiltonian family.
GapReport scan_gap_family(const std::function<SpectrumPoint(double, int)>& point_at,
                          const std::function<double(const SpectrumPoint&)>& matrix_element,
                          const GapScanOptions& opts);

}  // namespace detail

}  // namespace aqc
