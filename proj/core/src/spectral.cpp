#include "calabi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace calabi::spectral {

double CalabiParams::delta_b() const { return 2.0 * std::sqrt(lambda_d / n); }

double CalabiParams::eps_x() const { return std::min(delta, delta_b()); }

void validate_params(const CalabiParams& p) {
  if (p.n < 2) throw std::invalid_argument("calabi params: requires n >= 2");
  if (!(p.z0 > 0.0)) throw std::invalid_argument("calabi params: requires z0 > 0");
  if (!(p.lambda_d > 0.0)) throw std::invalid_argument("calabi params: requires lambda_D > 0");
  if (!(p.delta > 0.0)) throw std::invalid_argument("calabi params: requires delta > 0");
}

double assemble_lambda(const ode::Mode& mode, const CalabiParams& params) {
  validate_params(params);
  ode::validate_mode(mode, params.n);
  const double j = mode.j;
  return mode.lambda / params.z0 + params.n * std::pow(params.z0, params.n - 1) * j * j;
}

std::pair<double, double> gap_constants(const CalabiParams& params) {
  validate_params(params);
  return {params.delta_b(), params.eps_x()};
}

SpectrumTable toy_spectrum(const CalabiParams& params, int j_max, int per_weight,
                           unsigned seed) {
  validate_params(params);
  if (j_max < 0) throw std::invalid_argument("toy_spectrum: requires j_max >= 0");
  if (per_weight < 1) throw std::invalid_argument("toy_spectrum: requires per_weight >= 1");

  SpectrumTable table;
  table.params = params;
  table.seed = seed;
  table.j_max = j_max;
  table.per_weight = per_weight;

  for (int j = 0; j <= j_max; ++j) {
    for (int m = 0; m < per_weight; ++m) {
      ode::Mode mode;
      mode.j = j;
      if (j == 0) {
        mode.lambda = params.lambda_d * m;  // m = 0 is the k = 0 mode
        mode.k = (m == 0) ? 0 : 1;
      } else {
        mode.lambda = 0.5 * (params.n - 1.0) * j + params.lambda_d * (m + 1);
        mode.k = 1;
      }
      table.modes.push_back({mode, assemble_lambda(mode, params)});
    }
  }

  std::stable_sort(table.modes.begin(), table.modes.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) {
                     if (a.cross_section_eigenvalue != b.cross_section_eigenvalue) {
                       return a.cross_section_eigenvalue < b.cross_section_eigenvalue;
                     }
                     if (a.mode.j != b.mode.j) return a.mode.j < b.mode.j;
                     return a.mode.lambda < b.mode.lambda;
                   });
  for (std::size_t i = 0; i < table.modes.size(); ++i) {
    table.modes[i].mode.k = static_cast<int>(i);
  }
  return table;
}

double fourier_decay_bound(double lambda_cross, int k0, double c_norm) {
  if (!(lambda_cross > 0.0)) throw std::domain_error("fourier_decay_bound: requires Lambda > 0");
  if (k0 < 1) throw std::invalid_argument("fourier_decay_bound: requires K0 >= 1");
  if (c_norm < 0.0) throw std::invalid_argument("fourier_decay_bound: requires c_norm >= 0");
  return c_norm / std::pow(lambda_cross, k0);
}

double eigenfunction_sup_exponent(int n, int deriv_order) {
  if (n < 2) throw std::invalid_argument("eigenfunction_sup_exponent: requires n >= 2");
  if (deriv_order < 0) {
    throw std::invalid_argument("eigenfunction_sup_exponent: requires deriv_order >= 0");
  }
  const int m = 2 * n - 1;
  return 0.5 * (m / 2) + 0.5 * (deriv_order + 1);
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_spectrum(std::ostream& os, const SpectrumTable& table) {
  os << "# calabi-spectrum v1\n";
  os << "# n=" << table.params.n << " z0=" << fmt(table.params.z0)
     << " lambda_D=" << fmt(table.params.lambda_d) << " delta=" << fmt(table.params.delta)
     << " j_max=" << table.j_max << " per_weight=" << table.per_weight
     << " seed=" << table.seed << "\n";
  os << "k j lambda Lambda\n";
  for (const SpectrumEntry& e : table.modes) {
    os << e.mode.k << " " << e.mode.j << " " << fmt(e.mode.lambda) << " "
       << fmt(e.cross_section_eigenvalue) << "\n";
  }
}

SpectrumTable read_spectrum(std::istream& is) {
  SpectrumTable table;
  std::string line;
  bool have_header = false, have_columns = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "n") table.params.n = std::stoi(val);
        else if (key == "z0") table.params.z0 = std::stod(val);
        else if (key == "lambda_D") table.params.lambda_d = std::stod(val);
        else if (key == "delta") table.params.delta = std::stod(val);
        else if (key == "j_max") table.j_max = std::stoi(val);
        else if (key == "per_weight") table.per_weight = std::stoi(val);
        else if (key == "seed") table.seed = static_cast<unsigned>(std::stoul(val));
        have_header = true;
      }
      continue;
    }
    if (!have_columns) {
      if (line.rfind("k j lambda Lambda", 0) != 0) {
        throw std::invalid_argument("read_spectrum: unexpected column header: " + line);
      }
      have_columns = true;
      continue;
    }
    std::istringstream ls(line);
    SpectrumEntry e;
    if (!(ls >> e.mode.k >> e.mode.j >> e.mode.lambda >> e.cross_section_eigenvalue)) {
      throw std::invalid_argument("read_spectrum: malformed row: " + line);
    }
    table.modes.push_back(e);
  }
  if (!have_header || !have_columns) {
    throw std::invalid_argument("read_spectrum: missing header");
  }
  validate_params(table.params);
  for (const SpectrumEntry& e : table.modes) ode::validate_mode(e.mode, table.params.n);
  return table;
}

std::string spectrum_to_string(const SpectrumTable& table) {
  std::ostringstream os;
  write_spectrum(os, table);
  return os.str();
}

SpectrumTable spectrum_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_spectrum(is);
}

}  // namespace calabi::spectral
