#pragma once

#include <json.hpp>

#include "cds/conditions.hpp"

namespace cds {

using Json = nlohmann::ordered_json;

Json to_json(const FreeAlgebraCaps& caps);
Json to_json(const Counterexample& c);
Counterexample counterexample_from_json(const Json& j);
Json to_json(const Witness& w);
/// `algebras` names the generating algebras; caps are echoed.
Json to_json(const SpectrumResult& r, const std::vector<std::string>& algebras,
             const FreeAlgebraCaps& caps);
Json to_json(const TermChain& c, const std::vector<std::string>& algebras,
             const FreeAlgebraCaps& caps);
Json to_json(const RelationCheck& c);

}  // namespace cds
