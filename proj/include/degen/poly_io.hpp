#ifndef DEGEN_POLY_IO_HPP
#define DEGEN_POLY_IO_HPP

#include <json.hpp>

#include "degen/poly.hpp"
#include "degen/radial_expr.hpp"

namespace degen {

/// {"dim": d, "terms": [{"coeff": "num/den", "exps": [e1,...,ed]}, ...]}
/// Coefficients are rational strings; decimals are rejected.
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

/// {"dim": d, "terms": [{"coeff": <poly>, "factors":
///   [{"base": <poly>, "exponent": "num/den"}, ...]}, ...]}
/// Deserialization renormalizes, so round trips land on the canonical form.
nlohmann::json expr_to_json(const RadialPowerExpr& e);
RadialPowerExpr expr_from_json(const nlohmann::json& j);

}  // namespace degen

#endif
