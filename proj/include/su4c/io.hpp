// Copyright 2026 The su4c Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "su4c/errors.hpp"
#include "su4c/experiment.hpp"
#include "su4c/gates.hpp"
#include "su4c/pipeline.hpp"
#include "su4c/tomography.hpp"

namespace su4c::io {

using json = nlohmann::json;

namespace detail {

inline double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string("non-finite value for ") + what);
  return x;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace detail

inline json encode(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex decode_complex(const json& j) {
  if (j.is_number()) return {detail::number(j, "complex"), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex scalar must be [re, im]");
  return {detail::number(j[0], "re"), detail::number(j[1], "im")};
}

template <typename Derived>
json encode_matrix(const Eigen::MatrixBase<Derived>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode(Complex(m(r, c))));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <int N>
Eigen::Matrix<Complex, N, N> decode_matrix(const json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(N)) {
    throw ParseError("matrix must be an array of " + std::to_string(N) + " rows");
  }
  Eigen::Matrix<Complex, N, N> m;
  for (int r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != static_cast<std::size_t>(N)) {
      throw ParseError("matrix row " + std::to_string(r) + " must have " + std::to_string(N) +
                       " entries");
    }
    for (int c = 0; c < N; ++c) m(r, c) = decode_complex(j[r][c]);
  }
  return m;
}

inline Mat4 decode_mat4(const json& j) { return decode_matrix<4>(j); }

// Rotation and circuit parameters.

inline json encode(const RotationParams& p) {
  return {{"theta", p.theta}, {"phi", p.phi}, {"phiz", p.phiz}, {"sign", p.sign}};
}

inline RotationParams decode_rotation(const json& j) {
  RotationParams p;
  p.theta = detail::number(detail::field(j, "theta"), "theta");
  p.phi = detail::number(detail::field(j, "phi"), "phi");
  p.phiz = detail::number(detail::field(j, "phiz"), "phiz");
  if (j.contains("sign")) {
    const json& s = j["sign"];
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
      throw ParseError("sign must be +1 or -1");
    }
    p.sign = s.get<int>();
  }
  return p;
}

inline json encode(const CircuitParams& c) {
  return {{"alpha", c.cls.alpha}, {"beta", c.cls.beta},   {"delta", c.cls.delta},
          {"A", encode(c.a)},     {"B", encode(c.b)},     {"C", encode(c.c)},
          {"D", encode(c.d)},     {"global_phase", encode(c.global_phase)}};
}

inline CircuitParams decode_circuit(const json& j) {
  CircuitParams c;
  c.cls.alpha = detail::number(detail::field(j, "alpha"), "alpha");
  c.cls.beta = detail::number(detail::field(j, "beta"), "beta");
  c.cls.delta = detail::number(detail::field(j, "delta"), "delta");
  c.a = decode_rotation(detail::field(j, "A"));
  c.b = decode_rotation(detail::field(j, "B"));
  c.c = decode_rotation(detail::field(j, "C"));
  c.d = decode_rotation(detail::field(j, "D"));
  c.global_phase = j.contains("global_phase") ? decode_complex(j["global_phase"]) : Complex(1.0);
  return c;
}

// Pulses.

inline json encode(const PulseSequence& seq) {
  json pulses = json::array();
  for (const auto& g : seq.pulses()) {
    if (const auto* r = std::get_if<RGate>(&g)) {
      pulses.push_back({{"gate", "R"}, {"theta", r->theta}, {"phi", r->phi}, {"target", r->target}});
    } else if (const auto* z = std::get_if<RzGate>(&g)) {
      pulses.push_back({{"gate", "Rz"}, {"phiz", z->phiz}, {"target", z->target}});
    } else {
      pulses.push_back({{"gate", "G"}});
    }
  }
  return {{"pulses", pulses}, {"global_phase", encode(seq.global_phase())}};
}

inline PulseSequence decode_pulses(const json& j) {
  PulseSequence seq;
  const json& pulses = detail::field(j, "pulses");
  if (!pulses.is_array()) throw ParseError("pulses must be an array");
  for (const json& p : pulses) {
    const json& name = detail::field(p, "gate");
    if (!name.is_string()) throw ParseError("gate name must be a string");
    const std::string g = name.get<std::string>();
    const auto target = [&] {
      const json& t = detail::field(p, "target");
      if (!t.is_number_integer()) throw ParseError("target must be 0 or 1");
      return t.get<int>();
    };
    try {
      if (g == "R") {
        seq.push(make_r(detail::number(detail::field(p, "theta"), "theta"),
                        detail::number(detail::field(p, "phi"), "phi"), target()));
      } else if (g == "Rz") {
        seq.push(make_rz(detail::number(detail::field(p, "phiz"), "phiz"), target()));
      } else if (g == "G") {
        seq.push(GGate{});
      } else {
        throw ParseError("unknown gate '" + g + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (j.contains("global_phase")) seq.set_global_phase(decode_complex(j["global_phase"]));
  return seq;
}

// Noise and measurement data.

inline json encode(const NoiseModel& n) {
  return {{"overrotation_sigma", n.overrotation_sigma},
          {"depolarizing_per_g", n.depolarizing_per_g},
          {"damping_per_circuit", n.damping_per_circuit}};
}

inline NoiseModel decode_noise(const json& j) {
  if (!j.is_object()) throw ParseError("noise model must be an object");
  NoiseModel n;
  const auto opt = [&](const char* key, double& out) {
    if (j.contains(key)) out = detail::number(j[key], key);
  };
  opt("overrotation_sigma", n.overrotation_sigma);
  opt("depolarizing_per_g", n.depolarizing_per_g);
  opt("damping_per_circuit", n.damping_per_circuit);
  try {
    n.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return n;
}

inline json encode(const Setting& s) {
  return json::array({std::string(1, to_char(s.q0)), std::string(1, to_char(s.q1))});
}

inline Setting decode_setting(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ParseError("setting must be a pair of basis letters");
  }
  try {
    return {parse_basis(j[0].get<std::string>()), parse_basis(j[1].get<std::string>())};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json encode(const MeasurementRecord& r) {
  return {{"setting", encode(r.setting)}, {"counts", r.counts}, {"shots", r.shots}};
}

inline MeasurementRecord decode_record(const json& j) {
  MeasurementRecord r;
  r.setting = decode_setting(detail::field(j, "setting"));
  const json& counts = detail::field(j, "counts");
  if (!counts.is_array() || counts.size() != 4) throw ParseError("counts must have 4 entries");
  std::int64_t total = 0;
  for (int k = 0; k < 4; ++k) {
    if (!counts[k].is_number_integer() || counts[k].get<std::int64_t>() < 0) {
      throw ParseError("counts must be non-negative integers");
    }
    r.counts[k] = counts[k].get<std::int64_t>();
    total += r.counts[k];
  }
  const json& shots = detail::field(j, "shots");
  if (!shots.is_number_integer()) throw ParseError("shots must be an integer");
  r.shots = shots.get<std::int64_t>();
  if (r.shots != total) throw ParseError("shots does not equal the sum of counts");
  return r;
}

inline json encode(const InputStateLabel& l) {
  return json::array({to_string(l.q0), to_string(l.q1)});
}

inline InputStateLabel decode_label(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ParseError("input label must be a pair of state names");
  }
  try {
    return {parse_local_state(j[0].get<std::string>()), parse_local_state(j[1].get<std::string>())};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

/// Accepts either a bare array of records or an experiment bundle {records: [...], ...}.
inline std::vector<MeasurementRecord> decode_records(const json& j) {
  const json& arr = j.is_object() ? detail::field(j, "records") : j;
  if (!arr.is_array()) throw ParseError("expected an array of measurement records");
  std::vector<MeasurementRecord> out;
  for (const json& r : arr) out.push_back(decode_record(r));
  return out;
}

// Reconstructions and reports.

inline json encode(const DensityMatrix& rho) { return encode_matrix(rho.matrix()); }

inline DensityMatrix decode_density(const json& j, double tol = Tolerances{}.density_input) {
  try {
    return DensityMatrix::checked(decode_mat4(j), tol);
  } catch (const InvalidDensityMatrixError& e) {
    throw ParseError(e.what());
  }
}

inline json encode(const ProcessMatrix& e) { return encode_matrix(e.matrix()); }

inline ProcessMatrix decode_process(const json& j) { return ProcessMatrix(decode_matrix<16>(j)); }

inline json encode(const FidelityReport& r) {
  return {{"F", r.entanglement}, {"f_bar", r.mean_state}, {"per_state", r.per_state},
          {"relation_residual", r.relation_residual()}};
}

inline json encode(const Tolerances& t) {
  return {{"unitary_tag", t.unitary_tag},         {"unitary_input", t.unitary_input},
          {"symmetric_input", t.symmetric_input}, {"special_unitary", t.special_unitary},
          {"not_a_product", t.not_a_product},     {"reality", t.reality},
          {"eigen_match", t.eigen_match},         {"eigen_offdiag", t.eigen_offdiag},
          {"degenerate_phase", t.degenerate_phase}, {"branch", t.branch},
          {"theta_edge", t.theta_edge},           {"verify", t.verify},
          {"density_input", t.density_input},     {"density_invariant", t.density_invariant},
          {"eigen_clip", t.eigen_clip}};
}

inline json encode(const BenchmarkReport& r) {
  json ops = json::array();
  for (const auto& op : r.operations) {
    ops.push_back({{"index", op.index},
                   {"input", encode(op.input)},
                   {"fidelity", op.fidelity},
                   {"unitary", encode_matrix(op.unitary)},
                   {"program", encode(op.program)}});
  }
  json inputs = json::array();
  const auto labels = all_input_labels();
  for (int k = 0; k < 16; ++k) {
    inputs.push_back({{"input", encode(labels[k])}, {"mean_fidelity", r.input_means[k]}});
  }
  return {{"n", r.config.n},
          {"shots", r.config.exact ? json("exact") : json(r.config.shots)},
          {"method", r.config.method == TomographyMethod::kMle ? "mle" : "linear"},
          {"noise", encode(r.config.noise)},
          {"mean_fidelity", r.mean},
          {"std_fidelity", r.stddev},
          {"input_means", inputs},
          {"input_mean_std", r.input_mean_stddev},
          {"operations", ops}};
}

/// Histogram-ready CSV of per-operation fidelities.
inline std::string benchmark_csv(const BenchmarkReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "index,input_q0,input_q1,fidelity\n";
  for (const auto& op : r.operations) {
    out << op.index << ',' << to_string(op.input.q0) << ',' << to_string(op.input.q1) << ','
        << op.fidelity << '\n';
  }
  return out.str();
}

// Files.

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse(const std::string& text, const std::string& origin = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline json read_json(const std::string& path) { return parse(read_text(path), path); }

}  // namespace su4c::io
