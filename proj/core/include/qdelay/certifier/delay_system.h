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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdelay/poly/polynomial.h"

namespace qdelay::certifier {

// dx = f(x, x_d) dt + sqrt(g_scale_sq) g(x) dw with scalar w, delay tau,
// state set C = {x : p(x) <= 0 for p in domain}. Keeping the noise gain
// squared separate keeps the data rational when the gain is a square root.
struct DelaySystem {
  std::size_t n = 0;
  std::vector<Polynomial> f;       // arity 2n, variables (x, x_d)
  std::vector<Polynomial> g;       // arity n
  Rational g_scale_sq = 1;
  Rational tau = 0;
  std::vector<Polynomial> domain;  // arity n
  Polynomial v_star;               // arity n
  std::vector<Rational> target;    // v_star(target) = 0; origin when empty
  std::vector<double> interior_point;  // center for radial projection; target when empty
  bool builtin_invariant = false;  // invariance of C known analytically
  std::string name;

  std::vector<Rational> target_point() const;
  std::vector<double> projection_center() const;
};

struct DecisionTemplate {
  int v0_degree = 2;
  int v1_degree = 2;
  int multiplier_degree = 2;
  Rational epsilon = Rational(1, 1000000);  // R, T >= epsilon I
};

// Structural checks (arities, degrees). Throws std::invalid_argument.
void check_structure(const DelaySystem& system, const DecisionTemplate& tmpl);

struct ValidationOptions {
  double box = 10.0;       // sampling box [-box, box]^n
  int samples = 20000;
  std::uint64_t seed = 0x5eed;
  double bound = 0.0;      // B in ||x||^2 <= B on C; 0 picks one from samples
};

struct ValidationReport {
  bool ok = false;
  std::string error;
  std::vector<std::string> warnings;
  double bound = 0.0;
  int points_in_set = 0;
};

// Boundedness of C (certified: B - ||x||^2 >= 0 on C via an SOS multiplier
// proof), positivity of v_star at sampled points of C away from the target,
// and a warning when invariance of C is not known analytically.
ValidationReport validate(const DelaySystem& system, const ValidationOptions& options = {});

// Stable hex digest of everything except tau.
std::string fingerprint(const DelaySystem& system);

// Rejection samples of C from the box [-box, box]^n (deterministic in seed).
std::vector<std::vector<double>> sample_set(const std::vector<Polynomial>& domain, std::size_t n, int count,
                                            std::uint64_t seed, double box, int max_tries = 10000000);

struct SystemSpec {
  DelaySystem system;
  DecisionTemplate tmpl;
};

// Key-value text, one key per line, '#' comments:
//   n = 2
//   tau = 3/10
//   f = <poly in x1..xn, xd1..xdn>     (n lines, in order)
//   g = <poly in x1..xn>               (n lines)
//   g_scale_sq = 9/10                  (optional, default 1)
//   domain = <poly in x1..xn>          (any number)
//   v_star = <poly in x1..xn>
//   target = 0, 0                      (optional)
//   interior_point = 1/2, 0            (optional)
//   v0_degree = 2 / v1_degree = 2 / multiplier_degree = 2   (optional)
// Errors are reported as "line <k>: <message>".
SystemSpec parse_system_spec(const std::string& text);
SystemSpec read_system_spec(const std::string& path);
std::string format_system_spec(const SystemSpec& spec);

std::vector<std::string> state_names(std::size_t n);        // x1..xn
std::vector<std::string> delayed_state_names(std::size_t n);  // x1..xn, xd1..xdn

}  // namespace qdelay::certifier
