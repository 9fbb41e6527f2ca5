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

#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "qperm/zperm.hpp"

namespace qperm::cli {

using json = nlohmann::json;

struct Common {
  std::string out;
  bool jsonl = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  mpfr_prec_t precision = kDefaultPrecision;
};

struct ComputeArgs {
  std::string matrix;
  std::string root = "1:1";
  bool invpoly = false;
};

struct ModpArgs {
  std::string matrix;
  std::int64_t m = 3;
};

struct HighdegArgs {
  std::string matrix;
  std::int64_t m = 5;
};

struct RecoverArgs {
  std::string matrix;
  std::int64_t m = 3;
  std::string g = "10";
  std::string adversary = "worst_case_alternating";
  std::string bound = "proof_chain";
  bool fresh = false;
  std::string transcript;
};

struct InterpolateArgs {
  std::string matrix;
  std::string r;  // empty: 1 / (2 (d + 1))
  double noise = 0.0;
  std::string mode = "additive";
  std::string zstar = "1:1";
  bool exact = false;
};

struct SelfReduceArgs {
  std::string target;
  std::int64_t m = 3;
  std::int64_t k = 1;
  std::string corrupt = "0.2";
  std::string delta = "0.1";
  std::uint64_t trials = 1;
  std::uint64_t repetitions = 0;
  bool no_early_stop = false;
  std::string corruption_mode = "random_field_element";
  std::string dist = "gaussian";
  int bits = 30;
};

struct AutocorrArgs {
  std::string dist = "gaussian";
  std::string eps_grid = "0.05:0.45:0.05";
  double tol = 1e-12;
  std::string csv;
};

struct MomentsArgs {
  std::size_t n = 3;
  std::string root = "1:1";
  int moment = 2;
  std::uint64_t samples = 100000;
  std::string dist = "gaussian";
  bool dominance = false;
  bool exact = false;
};

struct AntiConcentrationArgs {
  std::size_t n = 4;
  std::string root = "1:1";
  double alpha = 0.1;
  std::uint64_t samples = 10000;
  std::string csv;
};

// Each returns the "results" object of the report.
json run_compute(const ComputeArgs& a, const Common& c, json& inputs);
json run_modp(const ModpArgs& a, const Common& c, json& inputs);
json run_highdeg(const HighdegArgs& a, const Common& c, json& inputs);
json run_recover(const RecoverArgs& a, const Common& c, json& inputs);
json run_interpolate(const InterpolateArgs& a, const Common& c, json& inputs);
json run_selfreduce(const SelfReduceArgs& a, const Common& c, json& inputs);
json run_autocorr(const AutocorrArgs& a, const Common& c, json& inputs);
json run_moments(const MomentsArgs& a, const Common& c, json& inputs);
json run_anticoncentration(const AntiConcentrationArgs& a, const Common& c, json& inputs);

// "m:k" or "m" (k = 1).
RootOfUnity parse_root(const std::string& s);
// "a:b:step", inclusive of b up to rounding.
std::vector<double> parse_grid(const std::string& s);

}  // namespace qperm::cli
