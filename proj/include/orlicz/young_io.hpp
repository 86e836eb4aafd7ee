#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/young.hpp"

namespace orlicz {

// Builds a YoungFunction from a structured document such as
//   {"kind":"power","p":2.5}
//   {"kind":"piecewise_table","knots":[[t,v,slope],...]}
// Throws std::runtime_error with a field diagnostic on malformed input,
// and when the resulting function fails the convexity/monotonicity
// validation grid.
inline YoungFunction from_json(const nlohmann::json& doc, const std::string& where = "spec") {
  const auto need = [&](const char* field) -> const nlohmann::json& {
    if (!doc.contains(field))
      throw std::runtime_error(where + ": missing field '" + field + "'");
    return doc.at(field);
  };
  const auto num = [&](const char* field) -> double {
    const auto& v = need(field);
    if (!v.is_number())
      throw std::runtime_error(where + ": field '" + field + "' must be a number");
    return v.get<double>();
  };
  if (!doc.is_object()) throw std::runtime_error(where + ": expected an object");
  const std::string kind = need("kind").is_string()
                               ? doc.at("kind").get<std::string>()
                               : throw std::runtime_error(where + ": field 'kind' must be a string");

  YoungFunction y = [&]() -> YoungFunction {
    if (kind == "power") return YoungFunction::power(num("p"));
    if (kind == "power_log") return YoungFunction::power_log(num("p"), num("alpha"));
    if (kind == "exp_poly") return YoungFunction::exp_poly(num("a"));
    if (kind == "linear_splice")
      return YoungFunction::linear_splice(num("t1"), from_json(need("base"), where + ".base"));
    if (kind == "scaled")
      return YoungFunction::scaled(from_json(need("inner"), where + ".inner"),
                                   num("lambda_arg"), num("lambda_val"));
    if (kind == "piecewise_table") {
      const auto& ks = need("knots");
      if (!ks.is_array() || ks.size() < 2)
        throw std::runtime_error(where + ": field 'knots' must be an array of >= 2 triples");
      std::vector<TableKnot> knots;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto& k = ks[i];
        if (!k.is_array() || k.size() != 3 || !k[0].is_number() || !k[1].is_number() ||
            !k[2].is_number())
          throw std::runtime_error(where + ": knots[" + std::to_string(i) +
                                   "] must be [t, value, right-slope]");
        knots.push_back({k[0].get<double>(), k[1].get<double>(), k[2].get<double>()});
      }
      return YoungFunction::table(std::move(knots));
    }
    throw std::runtime_error(where + ": unknown kind '" + kind + "'");
  }();

  const auto issues = validate(y);
  if (!issues.empty())
    throw std::runtime_error(where + ": rejected (" + issues.front() + ")");
  return y;
}

// Shorthand forms accepted on the command line: power:2.5, powerlog:2:1,
// exppoly:1.5, or a path to a structured document / an inline document.
inline YoungFunction parse_function_spec(const std::string& text, const std::string& where = "spec") {
  if (!text.empty() && (text.front() == '{')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw std::runtime_error(where + ": malformed document: " + e.what());
    }
    return from_json(doc, where);
  }
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    std::vector<double> args;
    std::stringstream ss(text.substr(colon + 1));
    std::string part;
    while (std::getline(ss, part, ':')) {
      try {
        args.push_back(std::stod(part));
      } catch (...) {
        throw std::runtime_error(where + ": bad numeric argument '" + part + "' in '" + text + "'");
      }
    }
    const auto arity = [&](std::size_t k) {
      if (args.size() != k)
        throw std::runtime_error(where + ": '" + head + "' takes " + std::to_string(k) +
                                 " argument(s)");
    };
    YoungFunction y = [&]() -> YoungFunction {
      if (head == "power") { arity(1); return YoungFunction::power(args[0]); }
      if (head == "powerlog" || head == "power_log") {
        arity(2);
        return YoungFunction::power_log(args[0], args[1]);
      }
      if (head == "exppoly" || head == "exp_poly") { arity(1); return YoungFunction::exp_poly(args[0]); }
      throw std::runtime_error(where + ": unknown shorthand '" + head + "'");
    }();
    const auto issues = validate(y);
    if (!issues.empty()) throw std::runtime_error(where + ": rejected (" + issues.front() + ")");
    return y;
  }
  // Otherwise treat as a file path.
  std::ifstream in(text);
  if (!in) throw std::runtime_error(where + ": cannot open '" + text + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::runtime_error(where + ": malformed document in '" + text + "': " + e.what());
  }
  return from_json(doc, where);
}

}  // namespace orlicz
