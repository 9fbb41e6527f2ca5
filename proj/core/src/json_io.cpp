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

#include "qperm/json_io.hpp"

#include <fstream>
#include <sstream>

#include "qperm/error.hpp"

namespace qperm {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t json_size(const json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad("expected a non-negative integer");
  return j.get<std::size_t>();
}

double json_double(const json& j) {
  if (!j.is_number()) bad("expected a number");
  return j.get<double>();
}

}  // namespace

std::string rational_to_string(const mpq_class& q) { return q.get_str(10); }

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  const auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    // Terminating decimal: digits / 10^len.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    mpz_class num;
    if (frac == 0 || digits.empty() || digits == "-" || num.set_str(digits, 10) != 0)
      bad("not a rational: \"" + s + "\"");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q = mpq_class(num, den);
    q.canonicalize();
    return q;
  }
  if (s.empty() || q.set_str(s, 10) != 0) bad("not a rational: \"" + s + "\"");
  if (q.get_den() == 0) bad("zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

mpz_class json_to_integer(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || z.set_str(s, 10) != 0) bad("not an integer: \"" + s + "\"");
    return z;
  }
  bad("expected an integer or decimal string");
}

mpq_class json_to_rational(const json& j) {
  if (j.is_number_integer()) return mpq_class(json_to_integer(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational string");
}

json to_json(const MatrixZ& x) {
  const std::size_t n = x.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      switch (x.domain()) {
        case Domain::binary:
        case Domain::integer:
          row.push_back(x.integers()(i, j).get_str());
          break;
        case Domain::gaussian_rational:
          row.push_back(to_json(x.gaussian()(i, j)));
          break;
        case Domain::complex_float: {
          auto c = x.complex_float()(i, j);
          row.push_back(json::array({c.real(), c.imag()}));
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", n}, {"domain", domain_name(x.domain())}, {"entries", rows}};
}

MatrixZ matrix_from_json(const json& j) {
  const std::size_t n = json_size(field(j, "n"));
  const Domain d = j.contains("domain") ? parse_domain(j.at("domain").get<std::string>()) : Domain::integer;
  const json& e = field(j, "entries");
  if (!e.is_array() || e.size() != n) bad("entries must have n rows");
  for (const auto& row : e)
    if (!row.is_array() || row.size() != n) bad("entries must have n columns per row");
  switch (d) {
    case Domain::binary:
    case Domain::integer: {
      Matrix<mpz_class> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) m(i, k) = json_to_integer(e[i][k]);
      return MatrixZ(d, m);
    }
    case Domain::gaussian_rational: {
      Matrix<GaussRat> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          const json& v = e[i][k];
          if (v.is_object())
            m(i, k) = GaussRat(json_to_rational(field(v, "re")),
                               v.contains("im") ? json_to_rational(v.at("im")) : mpq_class(0));
          else
            m(i, k) = GaussRat(json_to_rational(v));
        }
      return MatrixZ(m);
    }
    case Domain::complex_float: {
      Matrix<std::complex<double>> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          const json& v = e[i][k];
          if (v.is_array() && v.size() == 2)
            m(i, k) = {json_double(v[0]), json_double(v[1])};
          else if (v.is_object())
            m(i, k) = {json_double(field(v, "re")), v.contains("im") ? json_double(v.at("im")) : 0.0};
          else
            m(i, k) = json_double(v);
        }
      return MatrixZ(m);
    }
  }
  bad("unknown domain");
}

json to_json(const CycInt& a) {
  json c = json::array();
  for (const auto& v : a.coeffs()) c.push_back(v.get_str());
  return json{{"m", a.modulus()}, {"coeffs", c}};
}

CycInt cycint_from_json(const json& j) {
  const json& mj = field(j, "m");
  if (!mj.is_number_integer() || mj.get<long long>() < 1) bad("m must be a positive integer");
  const std::int64_t m = mj.get<std::int64_t>();
  const json& c = field(j, "coeffs");
  if (!c.is_array()) bad("coeffs must be an array");
  std::vector<mpz_class> v;
  for (const auto& x : c) v.push_back(json_to_integer(x));
  // Accepts any length; the value is reduced modulo Phi_m.
  return reduce_mod_phi(v, m);
}

json to_json(const CycRat& a) {
  json c = json::array();
  for (const auto& v : a.coeffs()) c.push_back(rational_to_string(v));
  return json{{"m", a.modulus()}, {"coeffs", c}};
}

json to_json(const IntPoly& p) {
  json c = json::array();
  for (const auto& v : p.coeffs()) c.push_back(v.get_str());
  return json{{"coeffs", c}};
}

IntPoly intpoly_from_json(const json& j) {
  const json& c = field(j, "coeffs");
  if (!c.is_array()) bad("coeffs must be an array");
  std::vector<mpz_class> v;
  for (const auto& x : c) v.push_back(json_to_integer(x));
  return IntPoly(v);
}

json to_json(const GaussRat& g) { return json{{"re", rational_to_string(g.re)}, {"im", rational_to_string(g.im)}}; }

json to_json(const ComplexBall& b) {
  return json{{"re", b.re().to_string(20)}, {"im", b.im().to_string(20)}, {"certified_error", b.radius()}};
}

json to_json(const InvPoly<mpz_class>& p) {
  json c = json::array();
  for (const auto& v : p.coeffs) c.push_back(v.get_str());
  return json{{"n", p.n}, {"coeffs", c}};
}

json to_json(const AnyInvPoly& p) {
  return std::visit(
      [](const auto& q) -> json {
        using R = std::decay_t<decltype(q.coeffs[0])>;
        if constexpr (std::is_same_v<R, mpz_class>) {
          return to_json(q);
        } else {
          json c = json::array();
          for (const auto& v : q.coeffs) c.push_back(to_json(v));
          return json{{"n", q.n}, {"coeffs", c}};
        }
      },
      p);
}

InvPoly<mpz_class> invpoly_from_json(const json& j) {
  InvPoly<mpz_class> p;
  p.n = json_size(field(j, "n"));
  const json& c = field(j, "coeffs");
  if (!c.is_array()) bad("coeffs must be an array");
  for (const auto& x : c) p.coeffs.push_back(json_to_integer(x));
  if (p.coeffs.size() != p.n * (p.n - (p.n > 0 ? 1 : 0)) / 2 + 1) bad("InvPoly needs C(n,2) + 1 coefficients");
  return p;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qperm
