#pragma once

#include <json.hpp>
#include <string>

#include "ppx/morphism.hpp"
#include "ppx/polygraph.hpp"

namespace ppx {

using json = nlohmann::json;

json term_to_json(const Polygraph& p, const Term& t);
Term term_from_json(const Polygraph& p, const json& j);

json polygraph_to_json(const Polygraph& p);
Polygraph polygraph_from_json(const json& j);

json morphism_to_json(const Morphism& f);
// Domain and codomain may be inline objects or paths relative to base_dir.
Morphism morphism_from_json(const json& j, const std::string& base_dir = ".");

json read_json(const std::string& path);
Polygraph load_polygraph(const std::string& path);
Morphism load_morphism(const std::string& path);
void write_json(const std::string& path, const json& j);

std::string class_name(ClassTag t);

}  // namespace ppx
