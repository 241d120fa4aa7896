#include "degen/poly_io.hpp"

#include <stdexcept>

namespace degen {

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  // reverse graded-lex: leading term first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    nlohmann::json t;
    t["coeff"] = to_string(it->second);
    t["exps"] = it->first.exps;
    terms.push_back(std::move(t));
  }
  return nlohmann::json{{"dim", p.dim()}, {"terms", std::move(terms)}};
}

nlohmann::json expr_to_json(const RadialPowerExpr& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.terms()) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : t.factors) {
      factors.push_back(nlohmann::json{{"base", poly_to_json(f.base)},
                                       {"exponent", to_string(f.exponent)}});
    }
    terms.push_back(nlohmann::json{{"coeff", poly_to_json(t.coeff)},
                                   {"factors", std::move(factors)}});
  }
  return nlohmann::json{{"dim", e.dim()}, {"terms", std::move(terms)}};
}

RadialPowerExpr expr_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    throw std::invalid_argument("expr_from_json: need {dim, terms}");
  const int dim = j.at("dim").get<int>();
  RadialPowerExpr e = RadialPowerExpr::zero(dim);
  for (const auto& t : j.at("terms")) {
    std::vector<PowerFactor> factors;
    for (const auto& f : t.at("factors")) {
      const auto expo = parse_rational(f.at("exponent").get<std::string>());
      if (!expo)
        throw std::invalid_argument("expr_from_json: bad exponent string");
      factors.emplace_back(poly_from_json(f.at("base")), *expo);
    }
    e = e + RadialPowerExpr::make_term(poly_from_json(t.at("coeff")),
                                       std::move(factors));
  }
  return e;
}

Poly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    throw std::invalid_argument("poly_from_json: need {dim, terms}");
  const int dim = j.at("dim").get<int>();
  Poly p(dim);
  for (const auto& t : j.at("terms")) {
    if (!t.contains("coeff") || !t.contains("exps"))
      throw std::invalid_argument("poly_from_json: term needs {coeff, exps}");
    if (!t.at("coeff").is_string())
      throw std::invalid_argument(
          "poly_from_json: coefficient must be a rational string like \"3/2\"");
    const auto c = parse_rational(t.at("coeff").get<std::string>());
    if (!c)
      throw std::invalid_argument("poly_from_json: bad coefficient '" +
                                  t.at("coeff").get<std::string>() +
                                  "' (decimals are not accepted)");
    std::vector<unsigned> exps;
    for (const auto& e : t.at("exps")) {
      const long v = e.get<long>();
      if (v < 0)
        throw std::invalid_argument("poly_from_json: negative exponent");
      exps.push_back(static_cast<unsigned>(v));
    }
    if (static_cast<int>(exps.size()) != dim)
      throw std::invalid_argument("poly_from_json: exps length != dim");
    p.add_term(Monomial(std::move(exps)), *c);
  }
  return p;
}

}  // namespace degen
