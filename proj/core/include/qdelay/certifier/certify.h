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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdelay/certifier/delay_system.h"
#include "qdelay/certifier/upsilon.h"
#include "qdelay/poly/rational_matrix.h"
#include "qdelay/sdp/problem.h"
#include "qdelay/sos/certificate.h"
#include "qdelay/sos/solve.h"

namespace qdelay::certifier {

struct StabilityCertificate {
  std::string fingerprint;  // of the system, see fingerprint()
  std::size_t n = 0;
  Rational tau;
  Rational epsilon;
  Polynomial V0, V1;
  RationalMatrix S, R, T;
  // Multipliers for p_i(x) then p_i(x_d), followed by the master SOS.
  std::vector<sos::SosCertificateItem> items;
  // -Y + sum h_i p_i(x) + sum h_d,i p_i(x_d) = master, over (x, x_d, y).
  sos::SosIdentity identity;

  Decisions<Rational> decisions() const;
};

enum class CertifyStatus { Certified, Unknown };
const char* to_string(CertifyStatus status);

struct CertifyOptions {
  sos::ReductionOptions reduction;
  sos::VerifyOptions verify;
};

struct CertifyResult {
  CertifyStatus status = CertifyStatus::Unknown;
  std::optional<StabilityCertificate> certificate;
  sdp::SdpStatus sdp_status = sdp::SdpStatus::Unknown;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double residual_inf = 0.0;  // exact identity residual after rationalization
  int iterations = 0;
  int rounds = 0;
  double seconds = 0.0;
  std::vector<std::string> diagnostics;
};

// Poses the SOS program for -Y on C x C x R^2n and keeps the result only
// when the rationalized certificate passes the exact check and R, T are
// exactly positive definite. Pure and deterministic.
CertifyResult certify(const DelaySystem& system, const DecisionTemplate& tmpl = {},
                      const CertifyOptions& options = {});

// The unreduced SOS program certify starts from.
sos::SosProgram certify_program(const DelaySystem& system, const DecisionTemplate& tmpl = {});

struct CertificateCheck {
  bool passed = false;
  sos::VerifyReport report;
  std::vector<std::string> failures;
};

// Re-derives Y from the system and the stored decisions and checks the
// stored identity against it, the Grams, and R, T > 0, all exactly.
CertificateCheck verify_stability_certificate(const StabilityCertificate& cert, const DelaySystem& system,
                                              const sos::VerifyOptions& options = {});

// Y with the certificate substituted, in (x, x_d, y_T, y_R).
Polynomial upsilon_of(const StabilityCertificate& cert, const DelaySystem& system);

struct SampledUpsilon {
  int points = 0;
  double max_value = 0.0;
  std::vector<double> argmax;  // (x, x_d)
};

// Max over `points` rejection samples (x, x_d) of C x C of
// Y(x, x_d, ybar) with ybar = diag(T^-1, R^-1) S' [x; x_d].
SampledUpsilon sample_upsilon(const StabilityCertificate& cert, const DelaySystem& system, int points,
                              std::uint64_t seed, double box = 2.0);

struct SweepRow {
  Rational tau;
  CertifyStatus status = CertifyStatus::Unknown;
  sdp::SdpStatus sdp_status = sdp::SdpStatus::Unknown;
  double seconds = 0.0;
  double residual_inf = 0.0;
  std::string note;
};

struct SweepResult {
  std::vector<SweepRow> rows;              // ascending tau
  std::optional<Rational> max_certified;   // end of the certified prefix
  std::vector<Rational> non_contiguous;    // certified probes after the first failure
};

// Probes every grid point tau_min + k*tol up to tau_max (tau_max is always
// probed). No monotonicity in tau is assumed, so the whole grid is scanned;
// probes run on `workers` threads and results do not depend on that count.
SweepResult max_certified_delay(const DelaySystem& system, const DecisionTemplate& tmpl, const Rational& tau_min,
                                const Rational& tau_max, const Rational& tol, int workers = 1,
                                const CertifyOptions& options = {});

// tau,status,sdp_status,residual_inf,note (timings are left out so the
// file is reproducible).
void write_sweep_csv(const SweepResult& result, std::ostream& out);

}  // namespace qdelay::certifier
