// calabi - configuration-driven front end for the model-space solvers:
// special-function evaluation, bound certification, per-mode Poisson solves,
// Liouville classification, and toy spectrum generation.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "calabi/calabi_ode.hpp"
#include "calabi/estimates.hpp"
#include "calabi/poisson.hpp"
#include "calabi/specfun.hpp"
#include "calabi/spectral.hpp"

namespace {

namespace sf = calabi::specfun;
namespace est = calabi::estimates;
namespace spec = calabi::spectral;
namespace poi = calabi::poisson;
using calabi::ode::Mode;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

// Flat key=value store.  A config file supplies defaults; command-line flags
// mirror the keys one-to-one and win on conflict.
class Options {
 public:
  void load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("config line missing '=': " + line);
      file_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }

  void set_flag(const std::string& key, const std::string& value) { flags_[key] = value; }

  std::optional<std::string> get(const std::string& key) const {
    if (auto it = flags_.find(key); it != flags_.end()) return it->second;
    if (auto it = file_.find(key); it != file_.end()) return it->second;
    return std::nullopt;
  }

  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw ConfigError("missing required option --" + key);
    return *v;
  }

  double number(const std::string& key) const { return parse_number(key, require(key)); }

  double number_or(const std::string& key, double dflt) const {
    auto v = get(key);
    return v ? parse_number(key, *v) : dflt;
  }

  int integer(const std::string& key) const {
    return static_cast<int>(parse_number(key, require(key)));
  }

  int integer_or(const std::string& key, int dflt) const {
    auto v = get(key);
    return v ? static_cast<int>(parse_number(key, *v)) : dflt;
  }

  std::string string_or(const std::string& key, const std::string& dflt) const {
    auto v = get(key);
    return v ? *v : dflt;
  }

  std::vector<double> list_or(const std::string& key, std::vector<double> dflt) const {
    auto v = get(key);
    if (!v) return dflt;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!trim(item).empty()) out.push_back(parse_number(key, trim(item)));
    }
    return out;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  static double parse_number(const std::string& key, const std::string& value) {
    try {
      std::size_t pos = 0;
      const double x = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("option --" + key + " is not a number: " + value);
    }
  }

  std::map<std::string, std::string> file_;
  std::map<std::string, std::string> flags_;
};

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path_ != "-") {
      file_.open(path_);
      if (!file_) throw ConfigError("cannot open output path: " + path_);
    }
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

// ----------------------------------------------------------- subcommands ---

int run_specfun(const Options& opt) {
  const std::string fn = opt.require("fn");
  Output out(opt.string_or("out", "-"));
  std::ostream& os = out.stream();

  double nu = opt.number_or("nu", 0.0);
  double beta = opt.number_or("beta", 0.0);
  double alpha = opt.number_or("alpha", 0.0);
  double y = opt.number_or("y", 0.0);

  calabi::LogValue lv;
  if (fn == "lgamma") {
    lv = sf::log_gamma(opt.number("x"));
    y = opt.number("x");
  } else if (fn == "I") {
    lv = sf::log_bessel_i(opt.number("nu"), opt.number("y"));
    nu = opt.number("nu");
    y = opt.number("y");
  } else if (fn == "K") {
    lv = sf::log_bessel_k(opt.number("nu"), opt.number("y"));
    nu = opt.number("nu");
    y = opt.number("y");
  } else if (fn == "M") {
    lv = sf::log_kummer_m(opt.number("beta"), opt.number("alpha"), opt.number("y"));
    beta = opt.number("beta");
    alpha = opt.number("alpha");
    y = opt.number("y");
  } else if (fn == "U") {
    lv = sf::log_tricomi_u(opt.number("beta"), opt.number("alpha"), opt.number("y"));
    beta = opt.number("beta");
    alpha = opt.number("alpha");
    y = opt.number("y");
  } else if (fn == "T") {
    lv = sf::tri_t(opt.number("beta"), opt.number("alpha"), opt.number("y"));
    beta = opt.number("beta");
    alpha = opt.number("alpha");
    y = opt.number("y");
  } else {
    throw ConfigError("unknown --fn (expect lgamma|I|K|M|U|T): " + fn);
  }

  os << "# module=specfun tolerance=" << fmt(sf::SeriesPolicy::term_cutoff) << "\n";
  os << "fn,nu,beta,alpha,y,value,sign,log_abs\n";
  os << fn << "," << fmt(nu) << "," << fmt(beta) << "," << fmt(alpha) << "," << fmt(y) << ","
     << fmt(lv.value()) << "," << lv.sign << "," << fmt(lv.log_abs) << "\n";
  if (opt.string_or("out", "-") != "-") std::cout << fmt(lv.value()) << "\n";
  return 0;
}

std::vector<double> negated(std::vector<double> g) {
  for (double& x : g) x = -x;
  std::reverse(g.begin(), g.end());
  return g;
}

int run_certify(const Options& opt) {
  const std::string what = opt.require("what");
  const int jobs = opt.integer_or("jobs", 1);
  if (jobs < 1) throw ConfigError("--jobs must be >= 1");

  std::vector<est::BoundCertificate> certs;
  if (what == "bessel") {
    const auto grid = est::log_grid(opt.number_or("ymin", 1.0), opt.number_or("ymax", 100.0),
                                    opt.integer_or("ycount", 64));
    for (double nu : opt.list_or("nu", est::default_nu_set())) {
      for (auto& c : est::certify_bessel(nu, grid, jobs)) certs.push_back(std::move(c));
    }
  } else if (what == "bessel_small") {
    const auto grid = est::log_grid(opt.number_or("ymin", 1e-3), opt.number_or("ymax", 1.0),
                                    opt.integer_or("ycount", 64));
    for (double nu : opt.list_or("nu", est::default_nu_set())) {
      certs.push_back(est::certify_bessel_small_i(nu, grid, jobs));
    }
  } else if (what == "caseA" || what == "caseB" || what == "product") {
    const int n = opt.integer_or("n", 2);
    const auto ygrid = negated(est::log_grid(opt.number_or("ymin", 1.0),
                                             opt.number_or("ymax", 100.0),
                                             opt.integer_or("ycount", 64)));
    const std::vector<double> case_b_default{-0.9 / n, 0.0, 0.5, 1.0};
    std::vector<double> qs =
        opt.list_or("q", what == "caseB" ? case_b_default : est::default_q_set());
    for (double q : qs) {
      const auto p = calabi::ode::hyper_params_from_q(n, q);
      std::vector<est::BoundCertificate> batch;
      if (what == "caseA") {
        batch = est::certify_tri_ku_case_a(p, ygrid, jobs);
      } else if (what == "caseB") {
        batch = est::certify_case_b(p, ygrid, jobs);
      } else {
        batch = est::certify_product(p, ygrid, jobs);
      }
      for (auto& c : batch) certs.push_back(std::move(c));
    }
  } else if (what == "monotonicity") {
    const int n = opt.integer_or("n", 2);
    Mode mode;
    mode.k = 1;
    mode.j = opt.integer_or("j", 1);
    mode.lambda = opt.number_or("lambda", 0.5 * (n - 1.0) * mode.j + 2.0);
    const double eta = opt.number_or("eta", 0.0);
    const auto zgrid =
        est::log_grid(std::max({1.0, std::pow(eta, 2.0 / n), opt.number_or("zmin", 1.0)}),
                      opt.number_or("zmax", 20.0), opt.integer_or("zcount", 48));
    certs = est::check_monotonicity(mode, n, eta, zgrid);
  } else {
    throw ConfigError(
        "unknown --what (expect bessel|bessel_small|caseA|caseB|product|monotonicity): " + what);
  }

  Output out(opt.string_or("out", "-"));
  std::ostream& os = out.stream();
  os << "# module=estimates tolerance=1e-10 format=name|grid_spec|lower|upper|pass\n";
  bool all_pass = true;
  for (const auto& c : certs) {
    os << est::certificate_line(c) << "\n";
    all_pass = all_pass && c.pass;
  }
  if (!all_pass) {
    std::cerr << "certify: at least one certificate failed\n";
    return 2;
  }
  return 0;
}

spec::CalabiParams params_from(const Options& opt) {
  spec::CalabiParams p;
  p.n = opt.integer_or("n", 2);
  p.z0 = opt.number_or("z0", 1.0);
  p.lambda_d = opt.number_or("lambda_d", 1.0);
  p.delta = opt.number_or("delta", 1.0);
  spec::validate_params(p);
  return p;
}

spec::SpectrumTable spectrum_from(const Options& opt) {
  if (auto path = opt.get("spectrum_file")) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot read spectrum file: " + *path);
    return spec::read_spectrum(in);
  }
  return spec::toy_spectrum(params_from(opt), opt.integer_or("jmax", 2),
                            opt.integer_or("per_weight", 3),
                            static_cast<unsigned>(opt.integer_or("seed", 0)));
}

int run_spectrum(const Options& opt) {
  const auto table = spec::toy_spectrum(params_from(opt), opt.integer_or("jmax", 2),
                                        opt.integer_or("per_weight", 3),
                                        static_cast<unsigned>(opt.integer_or("seed", 0)));
  Output out(opt.string_or("out", "-"));
  spec::write_spectrum(out.stream(), table);
  return 0;
}

int run_solve(const Options& opt) {
  const int n = opt.integer_or("n", 2);
  Mode mode;
  mode.j = opt.integer_or("j", 0);
  mode.lambda = opt.number_or("lambda", 0.0);
  mode.k = (mode.j == 0 && mode.lambda == 0.0) ? 0 : 1;

  poi::ModeCoefficient coeff;
  coeff.mode_index = mode.k;
  poi::RhsSpec rhs;
  const std::string family = opt.string_or("xi", "exp_half_power");
  if (family == "zero") {
    rhs.family = poi::RhsFamily::zero;
  } else if (family == "constant") {
    rhs.family = poi::RhsFamily::constant;
  } else if (family == "exp_half_power") {
    rhs.family = poi::RhsFamily::exp_half_power;
  } else if (family == "exp_linear") {
    rhs.family = poi::RhsFamily::exp_linear;
  } else {
    throw ConfigError("unknown --xi family: " + family);
  }
  rhs.amplitude = opt.number_or("amp", 1.0);
  rhs.rate = opt.number_or("rate", 1.0);
  coeff.payload = rhs;

  const double z1 = opt.number_or("z1", 1.0);
  const double z_max = opt.number_or("zmax", 4.0);
  const int count = opt.integer_or("samples", 41);
  if (count < 2) throw ConfigError("--samples must be >= 2");

  const poi::ModeSolution u = poi::solve_mode(mode, n, coeff, z1, z_max);

  Output out(opt.string_or("out", "-"));
  std::ostream& os = out.stream();
  poi::SolveOptions defaults;
  os << "# module=poisson tolerance=" << fmt(defaults.table_rel_tol) << "\n";
  os << "z,u\n";
  for (int i = 0; i < count; ++i) {
    const double z = z1 + (z_max - z1) * i / (count - 1);
    os << fmt(z) << "," << fmt(u(z)) << "\n";
  }
  return 0;
}

int run_classify(const Options& opt) {
  const auto table = spectrum_from(opt);
  const auto params = table.params;
  const std::string kind = opt.string_or("kind", opt.get("neumann") ? "neumann" : "dirichlet");
  const double growth = opt.number_or("growth_exponent", 0.0);

  std::size_t higher = 0;
  for (const auto& e : table.modes) {
    if (e.mode.k > 0) ++higher;
  }

  poi::ClassifyResult result;
  if (kind == "neumann") {
    const double kappa0 = opt.number_or("kappa0", 0.0);
    auto fluxes = opt.list_or("fluxes", std::vector<double>(higher, 0.0));
    result = poi::classify_neumann(table, kappa0, fluxes, params, growth);
  } else if (kind == "dirichlet") {
    auto values = opt.list_or("values", std::vector<double>(higher, 0.0));
    result = poi::classify_dirichlet(table, values, params, growth,
                                     opt.number_or("normalization", 0.0));
  } else {
    throw ConfigError("unknown --kind (expect neumann|dirichlet): " + kind);
  }

  Output out(opt.string_or("out", "-"));
  std::ostream& os = out.stream();
  os << "# module=poisson tolerance=1e-9\n";
  os << "verdict,kappa0,c0,decay_exponent,residual\n";
  const auto& g = result.growth;
  os << poi::verdict_name(g.verdict) << "," << fmt(g.kappa0) << "," << fmt(g.c0) << ","
     << fmt(g.decay_exponent) << "," << fmt(g.residual) << "\n";
  if (!result.mode_coefficients.empty()) {
    os << "mode_index,coefficient\n";
    for (std::size_t i = 0; i < result.mode_coefficients.size(); ++i) {
      os << (i + 1) << "," << fmt(result.mode_coefficients[i]) << "\n";
    }
  }
  if (opt.string_or("out", "-") != "-") {
    std::cout << poi::verdict_name(g.verdict) << "\n";
  }
  return 0;
}

int dispatch(const std::string& command, const Options& opt) {
  if (command == "specfun") return run_specfun(opt);
  if (command == "certify") return run_certify(opt);
  if (command == "solve") return run_solve(opt);
  if (command == "classify") return run_classify(opt);
  if (command == "spectrum") return run_spectrum(opt);
  throw ConfigError("unknown command (expect specfun|certify|solve|classify|spectrum): " +
                    command);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  std::string command;
  try {
    int i = 1;
    if (i < argc && argv[i][0] != '-') command = argv[i++];
    for (; i < argc; ++i) {
      std::string tok = argv[i];
      if (tok.rfind("--", 0) != 0) throw ConfigError("unexpected argument: " + tok);
      tok = tok.substr(2);
      const auto eq = tok.find('=');
      if (eq != std::string::npos) {
        opt.set_flag(tok.substr(0, eq), tok.substr(eq + 1));
      } else if (i + 1 < argc && std::string(argv[i + 1]).rfind("--", 0) != 0) {
        opt.set_flag(tok, argv[++i]);
      } else {
        opt.set_flag(tok, "true");
      }
    }
    if (auto cfg = opt.get("config")) opt.load_config(*cfg);
    if (command.empty()) command = opt.string_or("command", "");
    if (command.empty()) throw ConfigError("no command given");
    return dispatch(command, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure in '" << command << "': " << e.what() << "\n";
    return 2;
  }
}
