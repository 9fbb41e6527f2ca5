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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <thread>

#include "qperm/cyclotomic.hpp"
#include "qperm/error.hpp"
#include "qperm/experiments.hpp"
#include "qperm/hardness.hpp"
#include "qperm/json_io.hpp"
#include "qperm/recovery.hpp"
#include "qperm/selfreduce.hpp"

namespace qperm::cli {

namespace {

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

// Loads a JSON input and records its content hash in `inputs`.
json load_input(const std::string& key, const std::string& path, json& inputs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  inputs[key] = {{"path", path}, {"fnv1a64", hex64(fnv1a64(bytes))}};
  try {
    return json::parse(bytes);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

MatrixZ load_matrix(const std::string& key, const std::string& path, json& inputs) {
  return matrix_from_json(load_input(key, path, inputs));
}

KernelCaps caps_for(const Common& c) {
  KernelCaps caps;
  caps.jobs = c.jobs;
  caps.precision = c.precision;
  return caps;
}

json root_json(const RootOfUnity& z) { return {{"m", z.m}, {"k", z.k}}; }

DistSpec dist_from(const std::string& name) {
  DistSpec d;
  d.family = parse_dist_family(name);
  return d;
}

void require_exact_integer(const MatrixZ& x) {
  require(x.is_exact_integer(), ErrorCode::InvalidArgument, "this command needs a binary or integer matrix");
}

double ball_distance(const ComplexBall& a, const ComplexBall& b) { return std::abs(a.approx() - b.approx()); }

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RootOfUnity parse_root(const std::string& s) {
  RootOfUnity z;
  try {
    const auto colon = s.find(':');
    std::size_t used = 0;
    z.m = std::stoll(s.substr(0, colon), &used);
    if (used != (colon == std::string::npos ? s.size() : colon)) throw std::invalid_argument(s);
    if (colon != std::string::npos) {
      z.k = std::stoll(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1) throw std::invalid_argument(s);
    }
  } catch (const std::logic_error&) {
    fail(ErrorCode::ParseError, "root descriptor must look like m:k, got \"" + s + "\"");
  }
  validate_root(z);
  return z;
}

std::vector<double> parse_grid(const std::string& s) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || b < a)
    fail(ErrorCode::ParseError, "grid must look like a:b:step with step > 0, got \"" + s + "\"");
  std::vector<double> g;
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= count; ++i) g.push_back(a + static_cast<double>(i) * step);
  return g;
}

json run_compute(const ComputeArgs& a, const Common& c, json& inputs) {
  const MatrixZ x = load_matrix("matrix", a.matrix, inputs);
  const RootOfUnity z = parse_root(a.root);
  const KernelCaps caps = caps_for(c);
  json r;
  r["root"] = root_json(z);
  r["n"] = x.size();
  if (x.is_exact_integer()) {
    const InvPoly<mpz_class> p = invpoly_integer(x, caps);
    const CycInt v = specialize(p, z);
    r["m"] = v.modulus();
    r["coeffs"] = to_json(v)["coeffs"];
    r["exact"] = true;
    if (a.invpoly) r["invpoly"] = to_json(p);
  } else if (x.domain() == Domain::gaussian_rational) {
    const InvPoly<GaussRat> p = invpoly_gaussian(x, caps);
    const CycRat v = specialize(p, z);
    r["m"] = v.modulus();
    r["coeffs"] = to_json(v)["coeffs"];
    r["exact"] = true;
    if (a.invpoly) r["invpoly"] = to_json(AnyInvPoly(p));
  } else {
    const AnyInvPoly p = invpoly_subset_dp(x, caps);
    const auto& pb = std::get<InvPoly<ComplexBall>>(p);
    const ComplexBall v = specialize(pb, root_of_unity(static_cast<long>(z.k), static_cast<long>(z.m), c.precision));
    r["value"] = to_json(v);
    r["certified_error"] = v.radius();
    if (a.invpoly) r["invpoly"] = to_json(p);
  }
  return r;
}

json run_modp(const ModpArgs& a, const Common& c, json& inputs) {
  const auto pp = prime_power(a.m);
  require(pp.has_value(), ErrorCode::NotPrimePower, "modp needs m = p^k for an odd prime p");
  require(pp->first != 2, ErrorCode::TwoPowerExcluded,
          "m is a power of 2: the permanent modulo 2^k admits an efficient algorithm, so no hardness claim "
          "is made for zeta_{2^k}");
  const MatrixZ x = load_matrix("matrix", a.matrix, inputs);
  require_exact_integer(x);
  const CycInt rep = per_at_root(x, {a.m, 1}, caps_for(c));
  const Residue res = per_mod_p_from_rep(rep, pp->first);
  return {{"residue", res.value.get_si()}, {"p", res.p.get_si()}, {"m", a.m}, {"representation", to_json(rep)},
          {"exact", true}};
}

json run_highdeg(const HighdegArgs& a, const Common& c, json& inputs) {
  const MatrixZ x = load_matrix("matrix", a.matrix, inputs);
  require_exact_integer(x);
  const CycInt rep = per_at_root(x, {a.m, 1}, caps_for(c));
  const HighDegResult h = per_from_highdeg(rep, x.size());
  json A = json::array();
  for (const auto& v : h.coeffs) A.push_back(v.get_str());
  return {{"A", A}, {"per", h.per.get_str()}, {"m", a.m}, {"exact", true}};
}

json run_recover(const RecoverArgs& a, const Common& c, json& inputs) {
  const MatrixZ x = load_matrix("matrix", a.matrix, inputs);
  OracleConfig cfg;
  cfg.g = parse_rational(a.g);
  cfg.adversary = parse_adversary(a.adversary);
  cfg.seed = c.seed;
  cfg.consistent = !a.fresh;
  NormSqOracle oracle({a.m, 1}, cfg, caps_for(c));
  RecoverOptions opt;
  if (a.bound == "proof_chain")
    opt.bound = BoundMode::proof_chain;
  else if (a.bound == "reduction_norm")
    opt.bound = BoundMode::reduction_norm;
  else
    fail(ErrorCode::InvalidArgument, "unknown bound mode \"" + a.bound + "\"");

  const RecoverResult res = recover_exact(x, oracle, opt);
  const CycInt truth = per_at_root(x, {a.m, 1}, caps_for(c));
  json r;
  r["representation"] = to_json(res.rep);
  r["exact"] = true;
  r["matches_kernel"] = res.rep == truth;
  r["oracle"] = {{"g", rational_to_string(cfg.g)},
                 {"adversary", adversary_name(cfg.adversary)},
                 {"consistent", cfg.consistent},
                 {"envelope", oracle.envelope()},
                 {"queries", oracle.query_count()}};
  r["coeff_bound"] = res.coeff_bound.get_str();
  r["delta"] = rational_to_string(res.delta);
  r["T"] = res.T.get_str();
  r["pre_caip_estimate"] = to_json(res.reduce.estimate);
  r["pre_caip_certified_error"] = res.reduce.estimate.radius();
  r["pre_caip_observed_error"] = ball_distance(res.reduce.estimate, embed(truth, c.precision + 64));
  r["caip_decide_queries"] = res.caip.decide_queries;
  r["query_budget_shape"] = res.reduce.query_budget_shape;

  if (!a.transcript.empty()) {
    json t;
    t["chain_rows"] = res.reduce.chain.rows;
    json ov = json::array();
    for (const auto& v : res.reduce.chain.oracle_values) ov.push_back(v.to_string(20));
    t["oracle_values"] = ov;
    t["per_factor_delta"] = res.reduce.per_factor_delta;
    json ratios = json::array();
    for (const auto& q : res.reduce.ratios) {
      json rounds = json::array();
      for (const auto& rr : q.transcript)
        rounds.push_back({{"round", rr.index},
                          {"beta", rr.beta},
                          {"step", rr.step},
                          {"argmin", {rr.arg_j, rr.arg_k}},
                          {"value", rr.value},
                          {"slow_points", rr.slow_points}});
      ratios.push_back({{"ratio", to_json(q.ratio)},
                        {"center", to_json(q.center)},
                        {"beta", q.beta},
                        {"rounds", q.rounds},
                        {"queries", q.queries},
                        {"exact", q.exact},
                        {"grid_rounds", rounds}});
    }
    t["ratios"] = ratios;
    t["caip"] = {{"decide_queries", res.caip.decide_queries},
                 {"nodes", res.caip.stats.nodes},
                 {"leaves", res.caip.stats.leaves},
                 {"exact_checks", res.caip.stats.exact_checks}};
    t["representation"] = to_json(res.rep);
    t["total_queries"] = oracle.query_count();
    write_json_file(a.transcript, t);
    r["transcript"] = a.transcript;
  }
  return r;
}

json run_interpolate(const InterpolateArgs& a, const Common& c, json& inputs) {
  const MatrixZ x = load_matrix("matrix", a.matrix, inputs);
  require(x.domain() != Domain::complex_float, ErrorCode::InvalidArgument,
          "interpolate needs an exact matrix to simulate the oracle");
  require(a.noise >= 0.0 && std::isfinite(a.noise), ErrorCode::InvalidArgument, "noise must be finite and >= 0");
  const KernelCaps caps = caps_for(c);
  const std::size_t n = x.size();
  const std::size_t d = n * (n - (n > 0 ? 1 : 0)) / 2;
  const mpq_class r = a.r.empty() ? default_interp_shift(d) : parse_rational(a.r);
  const InterpNodes nodes = make_interp_nodes(d, r, c.precision);
  const std::vector<CycRat> exact_vals = exact_node_values(x, nodes, caps);
  const InvPoly<GaussRat> poly = invpoly_gaussian(x, caps);

  json out;
  out["d"] = d;
  out["r"] = rational_to_string(r);
  out["mode"] = a.mode;
  if (a.exact) {
    const std::vector<CycRat> coeffs = interpolate_exact(nodes, exact_vals);
    json cj = json::array();
    CycRat sum(coeffs.empty() ? 1 : coeffs[0].modulus());
    bool match = coeffs.size() == poly.coeffs.size();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      cj.push_back(to_json(coeffs[i]));
      sum += coeffs[i];
      if (match) {
        const auto& g = poly.coeffs[i];
        const std::int64_t M = coeffs[i].modulus();
        const CycRat gi = CycRat::constant(M, g.re) + CycRat::constant(M, g.im) * CycRat(CycInt::zeta_power(M, M / 4));
        match = M % 4 == 0 ? gi == coeffs[i] : g.im == 0 && CycRat::constant(M, g.re) == coeffs[i];
      }
    }
    out["coefficients"] = cj;
    out["per"] = to_json(sum);
    out["matches_invpoly"] = match;
    out["exact"] = true;
    return out;
  }

  std::mt19937_64 rng(splitmix64(c.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ComplexBall> evals;
  for (const auto& v : exact_vals) {
    ComplexBall e = embed(v, c.precision);
    const double rad = unit(rng) * (1 - 1e-12);
    const double th = 2 * M_PI * unit(rng);
    const ComplexBall u = ComplexBall::from_double(rad * std::cos(th), rad * std::sin(th), c.precision);
    if (a.mode == "additive") {
      e += scale(u, mpq_class(a.noise));
    } else if (a.mode == "multiplicative") {
      e += e * scale(u, mpq_class(a.noise));
    } else {
      fail(ErrorCode::InvalidArgument, "mode must be additive or multiplicative");
    }
    evals.push_back(e);
  }
  InterpEstimate est;
  ComplexBall truth;
  if (a.mode == "additive") {
    const RootOfUnity zs = parse_root(a.zstar);
    est = interpolate_per_additive(nodes, evals, a.noise, root_of_unity(static_cast<long>(zs.k),
                                                                         static_cast<long>(zs.m), c.precision));
    truth = embed(specialize(poly, zs), c.precision + 64);
    out["zstar"] = root_json(zs);
  } else {
    est = interpolate_per_multiplicative(nodes, evals, a.noise, x);
    const GaussRat p = per_one_ryser(x, caps);
    truth = ComplexBall::from_rational(p.re, p.im, c.precision + 64);
  }
  const double observed = ball_distance(est.estimate, truth);
  out["estimate"] = to_json(est.estimate);
  out["certified_error"] = est.estimate.radius();
  out["noise_bound"] = std::sqrt(static_cast<double>(d + 1)) * a.noise;
  out["truth"] = to_json(truth);
  out["observed_error"] = observed;
  out["within_certified"] = est.estimate.overlaps(truth);
  out["zero_fallback"] = est.zero_fallback;
  return out;
}

json run_selfreduce(const SelfReduceArgs& a, const Common& c, json& inputs) {
  const MatrixZ target = load_matrix("target", a.target, inputs);
  require(a.trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
  const RootOfUnity z{a.m, a.k};
  validate_root(z);
  const mpq_class corrupt = parse_rational(a.corrupt);
  const CorruptionMode mode = parse_corruption_mode(a.corruption_mode);
  SelfReduceOptions base;
  base.delta = parse_rational(a.delta);
  base.dist = dist_from(a.dist);
  base.dist.discretization_bits = a.bits;
  base.repetitions = a.repetitions;
  base.early_stop = !a.no_early_stop;

  std::vector<json> trials(a.trials);
  std::vector<char> ok(a.trials, 0);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t t = next++; t < a.trials; t = next++) {
      const std::uint64_t s = splitmix64(c.seed ^ splitmix64(t));
      NoisyValueOracle oracle(z, corrupt, mode, s, caps_for(c));
      SelfReduceOptions opt = base;
      opt.seed = splitmix64(s);
      json tj{{"trial", t}};
      try {
        const SelfReduceResult res = self_reduce(target, oracle, opt);
        const CycRat truth = oracle.exact(target);
        ok[t] = res.value && *res.value == truth;
        std::uint64_t corrupted = 0;
        for (const auto& v : res.votes) corrupted += v.corrupted;
        tj["correct"] = static_cast<bool>(ok[t]);
        tj["value"] = res.value ? to_json(*res.value) : json(nullptr);
        tj["votes"] = res.votes.size();
        tj["winner_votes"] = res.winner_votes;
        tj["abstentions"] = res.abstentions;
        tj["corrupted_answers"] = corrupted;
        tj["queries"] = oracle.query_count();
        tj["points"] = res.points;
        tj["eps"] = rational_to_string(res.eps);
        tj["repetitions_planned"] = res.repetitions_planned;
      } catch (const Error& e) {
        tj["correct"] = false;
        tj["error"] = std::string(error_code_name(e.code()));
      }
      trials[t] = std::move(tj);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(c.jobs, static_cast<unsigned>(a.trials)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::uint64_t wins = 0;
  for (char v : ok) wins += static_cast<std::uint64_t>(v);
  const double N = static_cast<double>(a.trials);
  const double floor95 = 2.0 / 3.0 - 1.96 * std::sqrt((2.0 / 9.0) / N);
  json r;
  r["root"] = root_json(z);
  r["corruption"] = rational_to_string(corrupt);
  r["corruption_mode"] = corruption_mode_name(mode);
  r["delta"] = rational_to_string(base.delta);
  r["dist"] = dist_family_name(base.dist.family);
  r["trials"] = trials;
  r["successes"] = wins;
  r["success_rate"] = static_cast<double>(wins) / N;
  r["binomial_95_floor_for_two_thirds"] = floor95;
  r["exact"] = true;
  // Every trial ending in a promise error is reported, then surfaced as exit 3.
  if (std::all_of(trials.begin(), trials.end(), [](const json& t) { return t.contains("error"); }))
    r["promise_failure"] = trials.front()["error"];
  return r;
}

json run_autocorr(const AutocorrArgs& a, const Common&, json&) {
  const DistFamily fam = parse_dist_family(a.dist);
  const std::vector<double> grid = parse_grid(a.eps_grid);
  const SlopeTable t = autocorr_slopes(fam, grid, a.tol);
  json rows = json::array();
  std::vector<std::string> csv;
  for (const auto& row : t.rows) {
    rows.push_back({{"x", row.x}, {"G", row.G}, {"H", row.H}, {"G_slope", row.G / row.x}, {"H_slope", row.H / row.x}});
    csv.push_back(num(row.x) + "," + num(row.G) + "," + num(row.H) + "," + num(row.G / row.x) + "," +
                  num(row.H / row.x));
  }
  if (!a.csv.empty()) write_csv(a.csv, "x,G,H,G_slope,H_slope", csv);
  return {{"dist", dist_family_name(fam)},
          {"tolerance", a.tol},
          {"certified_error", a.tol},
          {"rows", rows},
          {"max_G_slope", t.max_G_slope},
          {"max_H_slope", t.max_H_slope}};
}

json run_moments(const MomentsArgs& a, const Common& c, json&) {
  require(a.moment == 2 || a.moment == 4, ErrorCode::InvalidArgument, "moment order must be 2 or 4");
  const RootOfUnity z = parse_root(a.root);
  const MomentReport m = moment_estimate(a.n, z, a.moment / 2, a.samples, dist_from(a.dist), c.seed, c.jobs);
  json r;
  r["n"] = m.n;
  r["root"] = root_json(z);
  r["order"] = m.order;
  r["samples"] = m.samples;
  r["estimate"] = m.estimate;
  r["standard_error"] = m.std_error;
  r["certified_error"] = m.max_eval_error;
  r["exact_reference"] = m.exact_reference ? json(rational_to_string(*m.exact_reference)) : json(nullptr);
  r["config_hash"] = hex64(m.config_hash);
  if (a.exact) {
    json e;
    if (a.moment == 2 && a.n <= 6) e["second_moment"] = rational_to_string(exact_second_moment(a.n, z));
    if (a.moment == 4 && a.n <= 5) e["fourth_moment"] = to_json(exact_fourth_moment(a.n, z));
    if (a.moment == 4 && a.n <= 9) {
      const FourthMomentIdentity id = fourth_moment_identity(a.n);
      e["identity"] = {{"lhs", id.lhs.get_str()}, {"rhs", id.rhs.get_str()}, {"equal", id.equal}};
    }
    e["exact"] = true;
    r["exact_checks"] = e;
  }
  if (a.dominance) {
    const DominanceReport d = moment_dominance_check(a.n, z, a.samples, c.seed, c.jobs);
    r["dominance"] = {{"fourth_z", d.fourth_z},
                      {"fourth_one", d.fourth_one},
                      {"mean_difference", d.mean_difference},
                      {"standard_error", d.difference_std_error},
                      {"second_z", d.second_z},
                      {"second_one", d.second_one},
                      {"second_difference_standard_error", d.second_difference_std_error},
                      {"config_hash", hex64(d.config_hash)}};
  }
  return r;
}

json run_anticoncentration(const AntiConcentrationArgs& a, const Common& c, json&) {
  const RootOfUnity z = parse_root(a.root);
  const AntiConcentrationReport t = anticoncentration_tally(a.n, z, a.alpha, a.samples, c.seed, c.jobs);
  if (!a.csv.empty())
    write_csv(a.csv, "n,m,k,alpha,samples,hits,empirical_prob,std_error,chebyshev_bound",
              {std::to_string(a.n) + "," + std::to_string(z.m) + "," + std::to_string(z.k) + "," + num(a.alpha) +
               "," + std::to_string(t.samples) + "," + std::to_string(t.hits) + "," + num(t.empirical_prob) + "," +
               num(t.std_error) + "," + num(t.chebyshev_bound)});
  return {{"n", t.n},
          {"root", root_json(z)},
          {"alpha", t.alpha},
          {"samples", t.samples},
          {"hits", t.hits},
          {"undecided", t.undecided},
          {"empirical_prob", t.empirical_prob},
          {"standard_error", t.std_error},
          {"chebyshev_bound", t.chebyshev_bound},
          {"exceeds_bound_within_3se", t.empirical_prob >= t.chebyshev_bound - 3 * t.std_error},
          {"exact", true},
          {"config_hash", hex64(t.config_hash)}};
}

}  // namespace qperm::cli
