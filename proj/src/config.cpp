#include "boltzlab/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace boltzlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigResult parse_config_text(const std::string& text) {
  ConfigResult out;
  RunConfig& c = out.config;
  std::map<std::string, std::function<bool(const std::string&)>> setters;

  auto set_int = [](int& dst) {
    return [&dst](const std::string& v) {
      try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) return false;
        dst = x;
        return true;
      } catch (...) {
        return false;
      }
    };
  };
  auto set_u64 = [](std::uint64_t& dst) {
    return [&dst](const std::string& v) {
      try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) return false;
        dst = x;
        return true;
      } catch (...) {
        return false;
      }
    };
  };
  auto set_real = [](double& dst) {
    return [&dst](const std::string& v) {
      try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) return false;
        dst = x;
        return true;
      } catch (...) {
        return false;
      }
    };
  };
  auto set_str = [](std::string& dst) {
    return [&dst](const std::string& v) {
      dst = v;
      return true;
    };
  };

  setters["grid.n"] = set_int(c.grid_n);
  setters["grid.L"] = set_real(c.grid_L);
  setters["kernel.s"] = set_real(c.kernel.s);
  setters["kernel.K"] = set_real(c.kernel.K);
  setters["kernel.theta_min"] = set_real(c.kernel.theta_min);
  setters["kernel.n_theta"] = set_int(c.kernel.n_theta);
  setters["kernel.n_phi"] = set_int(c.kernel.n_phi);
  setters["workspace.mode"] = [&c](const std::string& v) {
    if (v == "trilinear")
      c.mode = EvalMode::trilinear;
    else if (v == "windowed")
      c.mode = EvalMode::windowed;
    else if (v == "trigonometric")
      c.mode = EvalMode::exact;
    else
      return false;
    return true;
  };
  setters["workspace.window_width"] = set_int(c.window_width);
  setters["ensemble.count"] = set_int(c.ensemble_count);
  setters["ensemble.family"] = set_str(c.ensemble_family);
  setters["ensemble.amplitude"] = set_real(c.amplitude);
  setters["seed"] = set_u64(c.seed);
  setters["dynamics.nx"] = set_int(c.nx);
  setters["dynamics.x_period"] = set_real(c.x_period);
  setters["dynamics.dt"] = set_real(c.dt);
  setters["dynamics.T"] = set_real(c.T);
  setters["dynamics.amplitude"] = set_real(c.dyn_amplitude);
  setters["dynamics.ell"] = set_real(c.ell);
  setters["dynamics.integrator"] = set_str(c.integrator);
  setters["dynamics.picard_iters"] = set_int(c.picard_iters);
  setters["output.dir"] = set_str(c.output_dir);

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      out.errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    if (!it->second(val))
      out.errors.push_back("line " + std::to_string(lineno) + ": bad value for '" + key +
                           "': '" + val + "'");
  }

  // validation (collect everything)
  if (c.grid_n < 8 || c.grid_n > 64 || c.grid_n % 2 != 0)
    out.errors.push_back("grid.n must be even and in [8, 64]");
  if (!(c.grid_L > 0)) out.errors.push_back("grid.L must be positive");
  if (!(c.kernel.s > 0.0 && c.kernel.s < 0.5))
    out.errors.push_back(
        "kernel.s must satisfy 0 < s < 1/2 (mild-singularity restriction)");
  if (!(c.kernel.K > 0)) out.errors.push_back("kernel.K must be positive");
  if (!(c.kernel.theta_min > 0 && c.kernel.theta_min < 1.5707963267948966))
    out.errors.push_back("kernel.theta_min must be in (0, pi/2)");
  if (c.kernel.n_theta < 4 || c.kernel.n_phi < 4)
    out.errors.push_back("kernel.n_theta and kernel.n_phi must be >= 4");
  if (c.window_width < 2 || c.window_width > 16)
    out.errors.push_back("workspace.window_width must be in [2, 16]");
  if (c.ensemble_count < 1) out.errors.push_back("ensemble.count must be >= 1");
  if (c.ensemble_family != "gauss_hermite" && c.ensemble_family != "band_limited" &&
      c.ensemble_family != "micro_only")
    out.errors.push_back("ensemble.family must be gauss_hermite|band_limited|micro_only");
  if (c.nx < 1 || c.nx > 64) out.errors.push_back("dynamics.nx must be in [1, 64]");
  if (!(c.x_period > 0)) out.errors.push_back("dynamics.x_period must be positive");
  if (c.dt < 0) out.errors.push_back("dynamics.dt must be >= 0 (0 selects the CFL bound)");
  if (!(c.T > 0)) out.errors.push_back("dynamics.T must be positive");
  if (c.integrator != "rk4" && c.integrator != "picard")
    out.errors.push_back("dynamics.integrator must be rk4|picard");
  if (c.picard_iters < 1) out.errors.push_back("dynamics.picard_iters must be >= 1");
  return out;
}

ConfigResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigResult r;
    r.errors.push_back("cannot open config file: " + path);
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string RunConfig::canonical_text() const {
  std::ostringstream o;
  o.precision(17);
  o << "grid.n = " << grid_n << "\n";
  o << "grid.L = " << grid_L << "\n";
  o << "kernel.s = " << kernel.s << "\n";
  o << "kernel.K = " << kernel.K << "\n";
  o << "kernel.theta_min = " << kernel.theta_min << "\n";
  o << "kernel.n_theta = " << kernel.n_theta << "\n";
  o << "kernel.n_phi = " << kernel.n_phi << "\n";
  o << "workspace.mode = "
    << (mode == EvalMode::trilinear ? "trilinear"
                                    : (mode == EvalMode::windowed ? "windowed"
                                                                  : "trigonometric"))
    << "\n";
  o << "workspace.window_width = " << window_width << "\n";
  o << "ensemble.count = " << ensemble_count << "\n";
  o << "ensemble.family = " << ensemble_family << "\n";
  o << "ensemble.amplitude = " << amplitude << "\n";
  o << "seed = " << seed << "\n";
  o << "dynamics.nx = " << nx << "\n";
  o << "dynamics.x_period = " << x_period << "\n";
  o << "dynamics.dt = " << dt << "\n";
  o << "dynamics.T = " << T << "\n";
  o << "dynamics.amplitude = " << dyn_amplitude << "\n";
  o << "dynamics.ell = " << ell << "\n";
  o << "dynamics.integrator = " << integrator << "\n";
  o << "dynamics.picard_iters = " << picard_iters << "\n";
  o << "output.dir = " << output_dir << "\n";
  return o.str();
}

}  // namespace boltzlab
