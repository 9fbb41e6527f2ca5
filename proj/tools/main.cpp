// Copyright 2026 The qperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qperm: z-permanents over cyclotomic rings and the reductions around them.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include "commands.hpp"
#include "qperm/error.hpp"

namespace {

using qperm::cli::json;

constexpr const char* kVersion = "0.1.0";

mpfr_prec_t precision_from_env() {
  const char* s = std::getenv("QPERM_PRECISION_BITS");
  if (s == nullptr || *s == '\0') return qperm::kDefaultPrecision;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  qperm::require(end != s && *end == '\0' && v >= 53 && v <= 1 << 20, qperm::ErrorCode::InvalidArgument,
                 "QPERM_PRECISION_BITS must be an integer in [53, 2^20]");
  return static_cast<mpfr_prec_t>(v);
}

void emit(const json& report, const qperm::cli::Common& c) {
  if (c.out.empty()) {
    std::cout << (c.jsonl ? report.dump() : report.dump(2)) << '\n';
    return;
  }
  std::ofstream out(c.out, c.jsonl ? std::ios::app : std::ios::trunc);
  qperm::require(static_cast<bool>(out), qperm::ErrorCode::InvalidArgument, "cannot write " + c.out);
  out << (c.jsonl ? report.dump() : report.dump(2)) << '\n';
}

int report_error(const std::string& code, const std::string& message, int status) {
  std::cerr << json{{"error", code}, {"message", message}, {"exit_code", status}}.dump() << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  namespace q = qperm::cli;
  CLI::App app{"qperm: exact z-permanents and oracle reductions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  q::Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", common.out, "Report path (default: stdout)");
    s->add_flag("--jsonl", common.jsonl, "Write the report as one appended JSON line");
    s->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--seed", common.seed, "Random seed");
  };

  std::string command;
  std::function<json(json&)> action;

  q::ComputeArgs compute;
  auto* s = app.add_subcommand("compute", "Per_z(X) at a root of unity");
  s->add_option("--matrix", compute.matrix)->required();
  s->add_option("--root", compute.root, "Root descriptor m:k");
  s->add_flag("--invpoly", compute.invpoly, "Include the inversion polynomial");
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_compute(compute, common, in); }; });

  q::ModpArgs modp;
  s = app.add_subcommand("modp", "Per(X) mod p from Per at zeta_{p^k}");
  s->add_option("--matrix", modp.matrix)->required();
  s->add_option("--m", modp.m)->required();
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_modp(modp, common, in); }; });

  q::HighdegArgs highdeg;
  s = app.add_subcommand("highdeg", "Per(X) from Per at a root of high degree");
  s->add_option("--matrix", highdeg.matrix)->required();
  s->add_option("--m", highdeg.m)->required();
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_highdeg(highdeg, common, in); }; });

  q::RecoverArgs recover;
  s = app.add_subcommand("recover", "Exact Per_z from a multiplicative |Per_z|^2 oracle");
  s->add_option("--matrix", recover.matrix)->required();
  s->add_option("--m", recover.m);
  s->add_option("--g", recover.g, "Oracle factor (rational)");
  s->add_option("--adversary", recover.adversary, "exact | random_uniform_logfactor | worst_case_alternating");
  s->add_option("--bound", recover.bound, "proof_chain | reduction_norm");
  s->add_flag("--fresh", recover.fresh, "Draw a fresh factor on every query");
  s->add_option("--transcript", recover.transcript, "Transcript path");
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_recover(recover, common, in); }; });

  q::InterpolateArgs interp;
  s = app.add_subcommand("interpolate", "Per from noisy values on shifted roots of unity");
  s->add_option("--matrix", interp.matrix)->required();
  s->add_option("--r", interp.r, "Node shift r in (0, 1/(d+1))");
  s->add_option("--noise", interp.noise, "Injected noise level");
  s->add_option("--mode", interp.mode, "additive | multiplicative");
  s->add_option("--zstar", interp.zstar, "Target root m:k (additive mode)");
  s->add_flag("--exact", interp.exact, "Exact interpolation in Q(zeta_L)");
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_interpolate(interp, common, in); }; });

  q::SelfReduceArgs sr;
  s = app.add_subcommand("selfreduce", "Worst-case Per_z from a corrupted average-case oracle");
  s->add_option("--target", sr.target)->required();
  s->add_option("--m", sr.m);
  s->add_option("--k", sr.k);
  s->add_option("--corrupt", sr.corrupt, "Corruption probability");
  s->add_option("--delta", sr.delta);
  s->add_option("--trials", sr.trials);
  s->add_option("--repetitions", sr.repetitions, "0: ceil(1/delta^2)");
  s->add_flag("--no-early-stop", sr.no_early_stop);
  s->add_option("--corruption-mode", sr.corruption_mode, "random_field_element | adversarial_offset");
  s->add_option("--dist", sr.dist, "gaussian | truncated_uniform");
  s->add_option("--bits", sr.bits, "Dyadic discretization of sampled entries");
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_selfreduce(sr, common, in); }; });

  q::AutocorrArgs ac;
  s = app.add_subcommand("autocorr", "Autocorrelation slope tables");
  s->add_option("--dist", ac.dist, "gaussian | truncated_uniform");
  s->add_option("--eps-grid", ac.eps_grid, "a:b:step");
  s->add_option("--tol", ac.tol, "Quadrature tolerance");
  s->add_option("--csv", ac.csv, "CSV table path");
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_autocorr(ac, common, in); }; });

  q::MomentsArgs mo;
  s = app.add_subcommand("moments", "Monte Carlo moments of |Per_z|");
  s->add_option("--n", mo.n)->required();
  s->add_option("--root", mo.root);
  s->add_option("--moment", mo.moment, "Order 2 or 4");
  s->add_option("--samples", mo.samples);
  s->add_option("--dist", mo.dist);
  s->add_flag("--dominance", mo.dominance, "Paired comparison of E|Per_z|^4 with E|Per|^4");
  s->add_flag("--exact", mo.exact, "Attach exact combinatorial checks");
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_moments(mo, common, in); }; });

  q::AntiConcentrationArgs an;
  s = app.add_subcommand("anticoncentration", "Tally of |Per_z|^2 > alpha n!");
  s->add_option("--n", an.n)->required();
  s->add_option("--root", an.root);
  s->add_option("--alpha", an.alpha);
  s->add_option("--samples", an.samples);
  s->add_option("--csv", an.csv);
  add_common(s);
  s->callback([&] { action = [&](json& in) { return q::run_anticoncentration(an, common, in); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report_error("UsageError", e.what(), 2);
  }

  try {
    common.precision = precision_from_env();
    json inputs = json::object();
    json results = action(inputs);
    json report{{"command", app.get_subcommands().front()->get_name()},
                {"version", kVersion},
                {"seed", common.seed},
                {"precision_bits", common.precision},
                {"inputs", inputs},
                {"results", results}};
    emit(report, common);
    if (results.contains("promise_failure"))
      return report_error(results["promise_failure"].get<std::string>(), "every trial failed", 3);
    return 0;
  } catch (const qperm::Error& e) {
    return report_error(std::string(qperm::error_code_name(e.code())), e.what(),
                        qperm::is_promise_error(e.code()) ? 3 : 2);
  } catch (const std::exception& e) {
    return report_error("InternalError", e.what(), 2);
  }
}
