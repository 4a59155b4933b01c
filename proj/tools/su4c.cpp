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

// su4c command-line frontend.
//
// Exit codes: 0 success, 1 usage or other runtime error, 2 unreadable or
// malformed input, 3 non-unitary input matrix, 4 verification failure.

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "su4c.hpp"

namespace {

using su4c::io::json;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNonUnitary = 3;
constexpr int kExitVerify = 4;

/// git-style object id: SHA-1 over "blob <size>\0<content>".
std::string git_blob_hash(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
  EVP_DigestUpdate(ctx, header.data(), header.size());
  EVP_DigestUpdate(ctx, content.data(), content.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bookkeeping shared by all subcommands: inputs read, seed, tolerances, destination.
struct Context {
  std::uint64_t seed = 0;
  std::string tolerance;
  std::string out;
  su4c::Tolerances tol;
  std::map<std::string, std::string> input_hashes;

  json read(const std::string& label, const std::string& path) {
    const std::string text = su4c::io::read_text(path);
    input_hashes[label] = git_blob_hash(text);
    return su4c::io::parse(text, path);
  }

  void resolve_tolerances() {
    std::string spec = tolerance;
    if (spec.empty()) {
      if (const char* env = std::getenv("SU4C_TOLERANCE")) spec = env;
    }
    if (spec.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(spec.c_str(), &end);
    if (end != spec.c_str() && *end == '\0') {
      if (!(v > 0.0)) throw su4c::ParseError("tolerance must be positive");
      tol.verify = v;
      return;
    }
    // Otherwise a JSON object (inline or a file) overriding individual fields.
    const json j = spec.front() == '{' ? su4c::io::parse(spec, "tolerance") : read("tolerance", spec);
    if (!j.is_object()) throw su4c::ParseError("tolerance overrides must be a JSON object");
    json merged = su4c::io::encode(tol);
    for (const auto& [key, value] : j.items()) {
      if (!merged.contains(key)) throw su4c::ParseError("unknown tolerance '" + key + "'");
      merged[key] = su4c::io::detail::number(value, key.c_str());
    }
    tol = su4c::Tolerances{merged["unitary_tag"],     merged["unitary_input"],
                           merged["symmetric_input"], merged["special_unitary"],
                           merged["not_a_product"],   merged["reality"],
                           merged["eigen_match"],     merged["eigen_offdiag"],
                           merged["degenerate_phase"], merged["branch"],
                           merged["theta_edge"],      merged["verify"],
                           merged["density_input"],   merged["density_invariant"],
                           merged["eigen_clip"]};
  }

  json meta(const std::string& command, bool seeded) const {
    json m = {{"command", command}, {"inputs", input_hashes}, {"tolerances", su4c::io::encode(tol)}};
    if (seeded) m["seed"] = seed;
    return m;
  }

  void emit(const std::string& text) const {
    if (out.empty() || out == "-") {
      std::cout << text << '\n';
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    f << text << '\n';
  }

  void emit(const json& j) const { emit(j.dump(1)); }
};

su4c::NoiseModel load_noise(Context& ctx, const std::string& path) {
  if (path.empty()) return {};
  return su4c::io::decode_noise(ctx.read("noise", path));
}

su4c::Mat4 load_unitary(Context& ctx, const std::string& path) {
  const su4c::Mat4 u = su4c::io::decode_mat4(ctx.read("unitary", path));
  su4c::require_unitary(u, ctx.tol.unitary_input, path.c_str());
  return u;
}

su4c::CircuitParams compile_checked(const su4c::Mat4& u, const su4c::Tolerances& tol) {
  const su4c::CircuitParams program = su4c::decompose(u, tol);
  const auto report = su4c::verify(u, program, tol);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "compiled circuit misses the target: distance " << report.distance << " >= "
        << tol.verify;
    throw VerifyFailure(msg.str());
  }
  return program;
}

/// Program from --program, or compiled from --unitary.
su4c::CircuitParams load_program(Context& ctx, const std::string& program_path,
                                 const std::string& unitary_path) {
  if (!program_path.empty()) return su4c::io::decode_circuit(ctx.read("program", program_path));
  if (unitary_path.empty()) throw CLI::ValidationError("need --program or --unitary");
  return compile_checked(load_unitary(ctx, unitary_path), ctx.tol);
}

su4c::InputStateLabel parse_input_label(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw su4c::ParseError("input must look like 'up,plus'");
  try {
    return {su4c::parse_local_state(s.substr(0, comma)), su4c::parse_local_state(s.substr(comma + 1))};
  } catch (const std::invalid_argument& e) {
    throw su4c::ParseError(e.what());
  }
}

su4c::TomographyMethod method_of(const std::string& s) {
  try {
    return su4c::parse_method(s);
  } catch (const std::invalid_argument& e) {
    throw su4c::ParseError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"su4c: two-qubit SU(4) compiler, simulator and tomography"};
  app.require_subcommand(1);
  Context ctx;
  const auto common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--tolerance", ctx.tolerance,
                    "verification tolerance, or JSON overrides (inline or file); "
                    "default from SU4C_TOLERANCE");
    sub->add_option("--out", ctx.out, "output file (default: stdout)");
    if (seeded) sub->add_option("--seed", ctx.seed, "RNG seed")->capture_default_str();
  };

  std::string unitary_path, program_path, noise_path, records_path, input_label = "up,up";
  std::string method = "mle", csv_path;
  int n = 160;
  std::int64_t shots = 100;
  unsigned threads = 0;
  bool exact = false, no_cp = false;

  auto* compile = app.add_subcommand("compile", "decompose a 4x4 unitary into circuit parameters");
  compile->add_option("input", unitary_path, "unitary matrix JSON")->required();
  common(compile, false);

  auto* lower = app.add_subcommand("lower", "lower circuit parameters to calibrated pulses");
  lower->add_option("--program", program_path, "CircuitParams JSON");
  lower->add_option("--unitary", unitary_path, "unitary matrix JSON (compiled first)");
  common(lower, false);

  auto* verify = app.add_subcommand("verify", "check that a program realizes a unitary");
  verify->add_option("--unitary", unitary_path, "unitary matrix JSON")->required();
  verify->add_option("--program", program_path, "CircuitParams JSON (default: compile it)");
  common(verify, false);

  auto* sample = app.add_subcommand("sample", "draw Haar-random SU(4) matrices");
  sample->add_option("--n", n, "number of matrices")->capture_default_str();
  common(sample, true);

  auto* simulate = app.add_subcommand("simulate", "simulate the nine tomography settings");
  simulate->add_option("--program", program_path, "CircuitParams JSON");
  simulate->add_option("--unitary", unitary_path, "unitary matrix JSON (compiled first)");
  simulate->add_option("--input", input_label, "input product state, e.g. up,plus")
      ->capture_default_str();
  simulate->add_option("--noise", noise_path, "noise model JSON");
  simulate->add_option("--shots", shots, "shots per setting")->capture_default_str();
  common(simulate, true);

  auto* reconstruct = app.add_subcommand("reconstruct", "state tomography from measurement records");
  reconstruct->add_option("records", records_path, "records JSON (array or bundle)")->required();
  reconstruct->add_option("--method", method, "linear | mle")->capture_default_str();
  reconstruct->add_option("--unitary", unitary_path, "report fidelity against U|input>");
  reconstruct->add_option("--input", input_label, "input product state for --unitary")
      ->capture_default_str();
  common(reconstruct, false);

  auto* benchmark = app.add_subcommand("benchmark", "Haar-random operation benchmark");
  benchmark->add_option("--n", n, "operations (multiple of 16)")->capture_default_str();
  benchmark->add_option("--noise", noise_path, "noise model JSON");
  benchmark->add_option("--shots", shots, "shots per setting")->capture_default_str();
  benchmark->add_option("--method", method, "linear | mle")->capture_default_str();
  benchmark->add_flag("--exact", exact, "use exact outcome probabilities (infinite shots)");
  benchmark->add_option("--threads", threads, "worker threads (0: all cores)");
  benchmark->add_option("--csv", csv_path, "also write per-operation fidelities as CSV");
  common(benchmark, true);

  auto* process = app.add_subcommand("process-tomo", "process tomography of a compiled unitary");
  process->add_option("--unitary", unitary_path, "unitary matrix JSON")->required();
  process->add_option("--noise", noise_path, "noise model JSON");
  process->add_option("--shots", shots, "shots per setting")->capture_default_str();
  process->add_option("--method", method, "linear | mle")->capture_default_str();
  process->add_flag("--exact", exact, "use exact outcome probabilities (infinite shots)");
  process->add_flag("--no-cp", no_cp, "skip the completely-positive projection");
  common(process, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    ctx.resolve_tolerances();
    if (compile->parsed()) {
      const su4c::Mat4 u = load_unitary(ctx, unitary_path);
      json j = su4c::io::encode(compile_checked(u, ctx.tol));
      j["meta"] = ctx.meta("compile", false);
      ctx.emit(j);
    } else if (lower->parsed()) {
      const auto program = load_program(ctx, program_path, unitary_path);
      json j = su4c::io::encode(su4c::lower_to_pulses(program));
      j["meta"] = ctx.meta("lower", false);
      ctx.emit(j);
    } else if (verify->parsed()) {
      // No unitarity requirement here: printed matrices are only accurate to their digits.
      const su4c::Mat4 u = su4c::io::decode_mat4(ctx.read("unitary", unitary_path));
      const auto program = program_path.empty()
                               ? su4c::decompose(u, ctx.tol)
                               : su4c::io::decode_circuit(ctx.read("program", program_path));
      const auto report = su4c::verify(u, program, ctx.tol);
      ctx.emit(json{{"distance", report.distance},
                    {"invariant_error", report.invariant_error},
                    {"pass", report.pass},
                    {"meta", ctx.meta("verify", false)}});
      if (!report.pass) return kExitVerify;
    } else if (sample->parsed()) {
      if (n <= 0) throw CLI::ValidationError("--n must be positive");
      su4c::SeededRng rng(ctx.seed);
      json mats = json::array();
      for (int i = 0; i < n; ++i) mats.push_back(su4c::io::encode_matrix(su4c::sample_su4(rng)));
      ctx.emit(json{{"matrices", mats}, {"meta", ctx.meta("sample", true)}});
    } else if (simulate->parsed()) {
      const auto program = load_program(ctx, program_path, unitary_path);
      const auto noise = load_noise(ctx, noise_path);
      const auto label = parse_input_label(input_label);
      if (shots <= 0) throw CLI::ValidationError("--shots must be positive");
      su4c::SeededRng rng(ctx.seed);
      const auto records = su4c::run_pulses(su4c::lower_to_pulses(program), label, noise, shots, rng);
      json recs = json::array();
      for (const auto& r : records) recs.push_back(su4c::io::encode(r));
      ctx.emit(json{{"records", recs},
                    {"input", su4c::io::encode(label)},
                    {"noise", su4c::io::encode(noise)},
                    {"circuit_hash", git_blob_hash(su4c::io::encode(program).dump())},
                    {"meta", ctx.meta("simulate", true)}});
    } else if (reconstruct->parsed()) {
      const auto records = su4c::io::decode_records(ctx.read("records", records_path));
      su4c::MleResult mle{su4c::DensityMatrix::maximally_mixed(), {}, 0};
      const auto m = method_of(method);
      json j;
      if (m == su4c::TomographyMethod::kMle) {
        mle = su4c::reconstruct_state_mle(su4c::to_setting_counts(records));
        j["iterations"] = mle.iterations;
        j["log_likelihood"] = mle.log_likelihood.empty() ? 0.0 : mle.log_likelihood.back();
      } else {
        mle.rho = su4c::reconstruct_state_linear(su4c::to_setting_counts(records));
      }
      j["rho"] = su4c::io::encode(mle.rho);
      j["method"] = method;
      if (!unitary_path.empty()) {
        const su4c::Mat4 u = load_unitary(ctx, unitary_path);
        const auto ideal = su4c::DensityMatrix::pure(u * su4c::input_state(parse_input_label(input_label)));
        j["fidelity"] = su4c::state_fidelity(ideal, mle.rho, ctx.tol);
      }
      j["meta"] = ctx.meta("reconstruct", false);
      ctx.emit(j);
    } else if (benchmark->parsed()) {
      su4c::BenchmarkConfig config;
      config.n = n;
      config.seed = ctx.seed;
      config.noise = load_noise(ctx, noise_path);
      config.shots = shots;
      config.exact = exact;
      config.method = method_of(method);
      config.threads = threads;
      if (n <= 0 || n % 16 != 0) throw CLI::ValidationError("--n must be a positive multiple of 16");
      if (!exact && shots <= 0) throw CLI::ValidationError("--shots must be positive");
      const auto report = su4c::run_benchmark(config, ctx.tol);
      json j = su4c::io::encode(report);
      j["meta"] = ctx.meta("benchmark", true);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + csv_path + "'");
        f << su4c::io::benchmark_csv(report);
      }
      ctx.emit(j);
    } else if (process->parsed()) {
      const su4c::Mat4 u = load_unitary(ctx, unitary_path);
      su4c::ProcessTomographyConfig config;
      config.seed = ctx.seed;
      config.noise = load_noise(ctx, noise_path);
      config.shots = shots;
      config.exact = exact;
      config.method = method_of(method);
      config.options.cp_projection = !no_cp;
      if (!exact && shots <= 0) throw CLI::ValidationError("--shots must be positive");
      const auto result = su4c::run_process_tomography(u, config, ctx.tol);
      ctx.emit(json{{"process_matrix", su4c::io::encode(result.measured)},
                    {"fidelity", su4c::io::encode(result.fidelity)},
                    {"program", su4c::io::encode(result.program)},
                    {"meta", ctx.meta("process-tomo", true)}});
    }
  } catch (const su4c::ParseError& e) {
    std::cerr << "su4c: parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const su4c::NonUnitaryError& e) {
    std::cerr << "su4c: " << e.what() << '\n';
    return kExitNonUnitary;
  } catch (const VerifyFailure& e) {
    std::cerr << "su4c: " << e.what() << '\n';
    return kExitVerify;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "su4c: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "su4c: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
