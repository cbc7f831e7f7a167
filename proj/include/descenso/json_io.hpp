#pragma once

#include <json.hpp>

#include "descenso/filtered.hpp"
#include "descenso/homotopy.hpp"
#include "descenso/sset.hpp"

namespace descenso {

using Json = nlohmann::json;

// Scalars serialize as "p/q" strings, with "/q" omitted when the denominator
// is one. Degrees appear as decimal-string keys; matrices are row-major.

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const ChainComplex& c);
ChainComplex chain_complex_from_json(const Json& j);

Json to_json(const ChainMap& f);
ChainMap chain_map_from_json(const Json& j);

Json to_json(const Roof& r);
Roof roof_from_json(const Json& j);

Json to_json(const SSet& k);
SSetPtr sset_from_json(const Json& j);

Json to_json(const SimpObj& x);

Json to_json(const CochainComplex& c);
CochainComplex cochain_complex_from_json(const Json& j);

Json to_json(const FilteredComplex& f);
FilteredComplex filtered_complex_from_json(const Json& j);

Json to_json(const SpectralPage& p);

}  // namespace descenso
