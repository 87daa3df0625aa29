#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "calabi/calabi_ode.hpp"

namespace calabi::spectral {

// Global geometric/spectral parameters of the model space.
struct CalabiParams {
  int n = 2;            // complex dimension, >= 2
  double z0 = 1.0;      // boundary moment coordinate, > 0
  double lambda_d = 1.0;  // smallest positive zero-weight eigenvalue, > 0
  double delta = 1.0;   // asymptotic-closeness rate, > 0

  double delta_b() const;  // 2 sqrt(lambda_d / n)
  double eps_x() const;    // min(delta, delta_b)
};

void validate_params(const CalabiParams& p);

// Lambda_k = lambda_k / z0 + n z0^{n-1} j_k^2
double assemble_lambda(const ode::Mode& mode, const CalabiParams& params);

// (delta_b, eps_X)
std::pair<double, double> gap_constants(const CalabiParams& params);

struct SpectrumEntry {
  ode::Mode mode;
  double cross_section_eigenvalue;  // Lambda_k
};

// Eigendata table, sorted by Lambda ascending with k reassigned to the sorted
// position.  Immutable after generation.
struct SpectrumTable {
  CalabiParams params;
  unsigned seed = 0;
  int j_max = 0;
  int per_weight = 1;
  std::vector<SpectrumEntry> modes;
};

// Synthetic toy-divisor spectrum: for each weight j in [0, j_max], per_weight
// eigenvalues lambda = (n-1) j / 2 + lambda_d * m drawn from the arithmetic
// ladder (for j = 0 the rung m = 0 is the k = 0 mode; all other draws use
// m >= 1).  The ladder is a stand-in for a genuine torus spectrum and exists
// to exercise summation and truncation logic only.  Fully deterministic; the
// seed is recorded in the table header.
SpectrumTable toy_spectrum(const CalabiParams& params, int j_max, int per_weight,
                           unsigned seed);

// |xi_k| <= c_norm / Lambda^{K0} (relative normalization C = 1).
double fourier_decay_bound(double lambda_cross, int k0, double c_norm);

// Exponent of Lambda_k in the eigenfunction C^k bounds on the (2n-1)-dim
// cross-section: floor(m/2)/2 + (k+1)/2 with m = 2n - 1.  deriv_order = 0
// gives n/2, the sup-norm exponent used by synthesis tails.
double eigenfunction_sup_exponent(int n, int deriv_order);

// Columnar text serialization: '#'-prefixed header lines carrying the
// parameters, a column-name line, then one "k j lambda Lambda" row per mode.
void write_spectrum(std::ostream& os, const SpectrumTable& table);
SpectrumTable read_spectrum(std::istream& is);

std::string spectrum_to_string(const SpectrumTable& table);
SpectrumTable spectrum_from_string(const std::string& text);

}  // namespace calabi::spectral
