#pragma once

#include "itres/poly.hpp"

#include <json.hpp>

#include <string_view>

namespace itres {

using Json = nlohmann::json;

/// Parses "+ - * / ^ ( )", integers and identifiers. Juxtaposition is
/// multiplication ("2z1", "(a)(b)"). Division is by constants only.
/// Unknown identifiers are interned with the class implied by their name.
GradedPoly parse_poly(const RegistryPtr& reg, std::string_view text);

/// {"vars":[{"name","class","grade"}], "terms":[{"exp":[..],"num":"..","den":".."}]}.
/// Only variables that occur in p are listed, in registry order.
Json to_json(const GradedPoly& p);
GradedPoly poly_from_json(const RegistryPtr& reg, const Json& j);

}  // namespace itres
