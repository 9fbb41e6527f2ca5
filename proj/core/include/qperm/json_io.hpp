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

#include <gmpxx.h>

#include <nlohmann/json.hpp>
#include <string>

#include "qperm/ball.hpp"
#include "qperm/cyclotomic.hpp"
#include "qperm/matrix.hpp"
#include "qperm/poly.hpp"
#include "qperm/zperm.hpp"

namespace qperm {

using json = nlohmann::json;

// Big integers travel as decimal strings; rationals as "p/q" (or "p").
// parse_rational also takes terminating decimals such as "0.2".
// Parsers also accept plain JSON integers. Malformed input throws ParseError.
std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);
mpz_class json_to_integer(const json& j);
mpq_class json_to_rational(const json& j);

// {"n", "domain", "entries"}; gaussian_rational entries are {"re", "im"}
// rational strings, complex_float entries are [re, im] or {"re", "im"} numbers.
json to_json(const MatrixZ& x);
MatrixZ matrix_from_json(const json& j);

json to_json(const CycInt& a);
CycInt cycint_from_json(const json& j);
// {"m", "coeffs"} with rational strings.
json to_json(const CycRat& a);

json to_json(const IntPoly& p);
IntPoly intpoly_from_json(const json& j);

json to_json(const GaussRat& g);
// {"re", "im", "certified_error"}; midpoints are decimal strings.
json to_json(const ComplexBall& b);

// {"n", "coeffs"} in the entry convention of the source domain; ball
// coefficients carry their radii.
json to_json(const AnyInvPoly& p);
json to_json(const InvPoly<mpz_class>& p);
InvPoly<mpz_class> invpoly_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace qperm
