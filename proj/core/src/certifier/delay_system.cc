/*
   Copyright 2026 The qdelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "qdelay/certifier/delay_system.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qdelay/poly/text.h"
#include "qdelay/simulator/rng.h"
#include "qdelay/sos/solve.h"

namespace qdelay::certifier {

std::vector<Rational> DelaySystem::target_point() const {
  return target.empty() ? std::vector<Rational>(n, Rational(0)) : target;
}

std::vector<double> DelaySystem::projection_center() const {
  if (!interior_point.empty()) return interior_point;
  std::vector<double> c;
  for (const auto& t : target_point()) c.push_back(t.get_d());
  return c;
}

std::vector<std::string> state_names(std::size_t n) { return default_variable_names(n); }

std::vector<std::string> delayed_state_names(std::size_t n) {
  auto names = default_variable_names(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("xd" + std::to_string(i + 1));
  return names;
}

void check_structure(const DelaySystem& s, const DecisionTemplate& t) {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (s.n == 0) fail("system dimension n must be positive");
  if (s.f.size() != s.n) fail("expected " + std::to_string(s.n) + " drift components, got " + std::to_string(s.f.size()));
  if (s.g.size() != s.n) fail("expected " + std::to_string(s.n) + " noise components, got " + std::to_string(s.g.size()));
  for (const auto& p : s.f)
    if (p.arity() != 2 * s.n) fail("drift components must be polynomials in (x, x_d)");
  for (const auto& p : s.g)
    if (p.arity() != s.n) fail("noise components must be polynomials in x");
  for (const auto& p : s.domain)
    if (p.arity() != s.n) fail("domain polynomials must be polynomials in x");
  if (s.v_star.arity() != s.n) fail("v_star must be a polynomial in x");
  if (!s.target.empty() && s.target.size() != s.n) fail("target point has the wrong dimension");
  if (!s.interior_point.empty() && s.interior_point.size() != s.n) fail("interior point has the wrong dimension");
  if (sgn(s.tau) < 0) fail("delay tau must be nonnegative");
  if (sgn(s.g_scale_sq) < 0) fail("g_scale_sq must be nonnegative");
  for (int d : {t.v0_degree, t.v1_degree})
    if (d < 1) fail("decision polynomial degrees must be at least 1");
  if (t.multiplier_degree < 0 || t.multiplier_degree % 2 != 0) fail("multiplier degree must be even and nonnegative");
  if (sgn(t.epsilon) <= 0) fail("epsilon must be positive");
}

std::vector<std::vector<double>> sample_set(const std::vector<Polynomial>& domain, std::size_t n, int count,
                                            std::uint64_t seed, double box, int max_tries) {
  std::vector<FloatPolynomial> ps(domain.begin(), domain.end());
  const sim::CounterRng rng(seed);
  std::vector<std::vector<double>> out;
  std::vector<double> x(n);
  for (int tries = 0; tries < max_tries && static_cast<int>(out.size()) < count; ++tries) {
    for (std::size_t i = 0; i < n; i += 2) {
      const auto u = rng.uniform2(static_cast<std::uint64_t>(tries), static_cast<std::uint32_t>(i / 2));
      x[i] = box * (2 * u[0] - 1);
      if (i + 1 < n) x[i + 1] = box * (2 * u[1] - 1);
    }
    if (std::all_of(ps.begin(), ps.end(), [&](const FloatPolynomial& p) { return p(x.data()) <= 0.0; }))
      out.push_back(x);
  }
  return out;
}

ValidationReport validate(const DelaySystem& s, const ValidationOptions& options) {
  ValidationReport r;
  try {
    check_structure(s, DecisionTemplate{});
  } catch (const std::exception& e) {
    r.error = e.what();
    return r;
  }
  const auto pts = sample_set(s.domain, s.n, options.samples, options.seed, options.box);
  r.points_in_set = static_cast<int>(pts.size());
  if (pts.empty()) {
    r.error = "no sampled point satisfies the domain constraints; the set is empty or outside the sampling box";
    return r;
  }
  double rmax = 0.0;
  for (const auto& x : pts) {
    double s2 = 0.0;
    for (double v : x) s2 += v * v;
    rmax = std::max(rmax, s2);
  }
  r.bound = options.bound > 0 ? options.bound : std::ceil(2 * rmax + 1);

  // B - |x|^2 >= 0 on C.
  const Rational B = rational_from_double(r.bound);
  Polynomial target = Polynomial::constant(s.n, B);
  for (std::size_t i = 0; i < s.n; ++i) {
    auto xi = Polynomial::variable(s.n, i);
    target -= xi * xi;
  }
  bool bounded = false;
  for (int deg : {0, 2}) {
    if (s.domain.empty()) break;
    if (sos::prove_nonneg_on_set(target, s.domain, deg).verified) {
      bounded = true;
      break;
    }
  }
  if (!bounded) {
    std::ostringstream m;
    m << "could not certify |x|^2 <= " << r.bound << " on the domain (is it bounded?)";
    r.error = m.str();
    return r;
  }

  const auto tp = s.target_point();
  const FloatPolynomial vs(s.v_star);
  for (const auto& x : pts) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) d2 += (x[i] - tp[i].get_d()) * (x[i] - tp[i].get_d());
    if (d2 < 1e-12) continue;
    if (!(vs(x.data()) > 0.0)) {
      std::ostringstream m;
      m << "v_star is not positive at a sampled point of the domain (";
      for (std::size_t i = 0; i < s.n; ++i) m << (i ? ", " : "") << x[i];
      m << ")";
      r.error = m.str();
      return r;
    }
  }
  if (sgn(evaluate_exact(s.v_star, tp)) != 0) {
    r.error = "v_star does not vanish at the target point";
    return r;
  }
  if (!s.builtin_invariant)
    r.warnings.push_back("invariance of the domain under the dynamics is assumed, not checked");
  r.ok = true;
  return r;
}

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s;
}

std::string canonical(const DelaySystem& s) {
  std::ostringstream o;
  const auto xn = state_names(s.n);
  const auto xdn = delayed_state_names(s.n);
  o << "n " << s.n << "\n";
  for (const auto& p : s.f) o << "f " << to_string(p, xdn) << "\n";
  for (const auto& p : s.g) o << "g " << to_string(p, xn) << "\n";
  o << "g_scale_sq " << to_string(s.g_scale_sq) << "\n";
  for (const auto& p : s.domain) o << "domain " << to_string(p, xn) << "\n";
  o << "v_star " << to_string(s.v_star, xn) << "\n";
  o << "target " << join(s.target_point()) << "\n";
  return o.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

std::string fingerprint(const DelaySystem& s) {
  // 64-bit FNV-1a of the canonical text.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical(s)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << h;
  return o.str();
}

SystemSpec parse_system_spec(const std::string& text) {
  struct Line {
    int number;
    std::string value;
  };
  std::multimap<std::string, Line> kv;
  static const std::vector<std::string> repeated = {"f", "g", "domain"};
  static const std::vector<std::string> known = {"n",       "tau",    "f",         "g",
                                                 "g_scale_sq", "domain", "v_star",    "target",
                                                 "interior_point", "v0_degree", "v1_degree",
                                                 "multiplier_degree", "epsilon", "name"};
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  auto err = [](int line, const std::string& m) -> std::invalid_argument {
    return std::invalid_argument("line " + std::to_string(line) + ": " + m);
  };
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw err(number, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end()) throw err(number, "unknown key '" + key + "'");
    if (value.empty()) throw err(number, "empty value for '" + key + "'");
    if (kv.count(key) && std::find(repeated.begin(), repeated.end(), key) == repeated.end())
      throw err(number, "duplicate key '" + key + "'");
    kv.insert({key, {number, value}});
  }

  SystemSpec spec;
  DelaySystem& s = spec.system;
  auto one = [&](const std::string& key) -> const Line* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const Line& {
    const Line* l = one(key);
    if (!l) throw std::invalid_argument("line " + std::to_string(number) + ": missing required key '" + key + "'");
    return *l;
  };
  auto rational_at = [&](const Line& l) {
    try {
      return parse_rational(l.value);
    } catch (const std::exception& e) {
      throw err(l.number, e.what());
    }
  };
  auto int_at = [&](const Line& l) {
    const Rational v = rational_at(l);
    if (v.get_den() != 1 || !v.get_num().fits_sint_p()) throw err(l.number, "expected an integer");
    return static_cast<int>(v.get_num().get_si());
  };
  auto poly_at = [&](const Line& l, const std::vector<std::string>& names) {
    try {
      return parse_polynomial(l.value, names);
    } catch (const std::exception& e) {
      throw err(l.number, e.what());
    }
  };

  const Line& nl = require("n");
  const int n = int_at(nl);
  if (n < 1 || n > 16) throw err(nl.number, "n must be between 1 and 16");
  s.n = static_cast<std::size_t>(n);
  const auto xn = state_names(s.n);
  const auto xdn = delayed_state_names(s.n);
  s.tau = rational_at(require("tau"));
  if (sgn(s.tau) < 0) throw err(require("tau").number, "tau must be nonnegative");
  auto lines = [&](const std::string& key) {
    std::vector<Line> out;
    auto [b, e] = kv.equal_range(key);
    for (auto it = b; it != e; ++it) out.push_back(it->second);
    return out;
  };
  for (const auto& l : lines("f")) s.f.push_back(poly_at(l, xdn));
  for (const auto& l : lines("g")) s.g.push_back(poly_at(l, xn));
  for (const auto& l : lines("domain")) s.domain.push_back(poly_at(l, xn));
  if (s.f.size() != s.n)
    throw std::invalid_argument("line " + std::to_string(number) + ": expected " + std::to_string(s.n) +
                                " 'f' lines, found " + std::to_string(s.f.size()));
  if (s.g.size() != s.n)
    throw std::invalid_argument("line " + std::to_string(number) + ": expected " + std::to_string(s.n) +
                                " 'g' lines, found " + std::to_string(s.g.size()));
  s.v_star = poly_at(require("v_star"), xn);
  if (const Line* l = one("g_scale_sq")) {
    s.g_scale_sq = rational_at(*l);
    if (sgn(s.g_scale_sq) < 0) throw err(l->number, "g_scale_sq must be nonnegative");
  }
  auto vector_at = [&](const Line& l) {
    std::vector<std::string> parts = split_commas(l.value);
    if (parts.size() != s.n) throw err(l.number, "expected " + std::to_string(s.n) + " comma-separated values");
    std::vector<Rational> v;
    for (const auto& p : parts) {
      try {
        v.push_back(parse_rational(p));
      } catch (const std::exception& e) {
        throw err(l.number, e.what());
      }
    }
    return v;
  };
  if (const Line* l = one("target")) s.target = vector_at(*l);
  if (const Line* l = one("interior_point"))
    for (const auto& v : vector_at(*l)) s.interior_point.push_back(v.get_d());
  if (const Line* l = one("name")) s.name = l->value;
  if (const Line* l = one("v0_degree")) spec.tmpl.v0_degree = int_at(*l);
  if (const Line* l = one("v1_degree")) spec.tmpl.v1_degree = int_at(*l);
  if (const Line* l = one("multiplier_degree")) spec.tmpl.multiplier_degree = int_at(*l);
  if (const Line* l = one("epsilon")) spec.tmpl.epsilon = rational_at(*l);
  try {
    check_structure(s, spec.tmpl);
  } catch (const std::exception& e) {
    throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
  }
  return spec;
}

SystemSpec read_system_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system_spec(ss.str());
}

std::string format_system_spec(const SystemSpec& spec) {
  const DelaySystem& s = spec.system;
  std::ostringstream o;
  const auto xn = state_names(s.n);
  const auto xdn = delayed_state_names(s.n);
  if (!s.name.empty()) o << "name = " << s.name << "\n";
  o << "n = " << s.n << "\n";
  o << "tau = " << to_string(s.tau) << "\n";
  for (const auto& p : s.f) o << "f = " << to_string(p, xdn) << "\n";
  for (const auto& p : s.g) o << "g = " << to_string(p, xn) << "\n";
  o << "g_scale_sq = " << to_string(s.g_scale_sq) << "\n";
  for (const auto& p : s.domain) o << "domain = " << to_string(p, xn) << "\n";
  o << "v_star = " << to_string(s.v_star, xn) << "\n";
  if (!s.target.empty()) o << "target = " << join(s.target) << "\n";
  if (!s.interior_point.empty()) {
    std::vector<Rational> ip;
    for (double v : s.interior_point) ip.push_back(rational_from_double(v));
    o << "interior_point = " << join(ip) << "\n";
  }
  o << "v0_degree = " << spec.tmpl.v0_degree << "\n";
  o << "v1_degree = " << spec.tmpl.v1_degree << "\n";
  o << "multiplier_degree = " << spec.tmpl.multiplier_degree << "\n";
  o << "epsilon = " << to_string(spec.tmpl.epsilon) << "\n";
  return o.str();
}

}  // namespace qdelay::certifier
