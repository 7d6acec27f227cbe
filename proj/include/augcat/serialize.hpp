#pragma once

#include <map>
#include <string>
#include <tuple>

#include <json.hpp>

#include "augcat/constructions.hpp"
#include "augcat/presheaf.hpp"
#include "augcat/shapes.hpp"

namespace augcat {

using json = nlohmann::ordered_json;

json category_to_json(const FiniteCategory& cat);
std::shared_ptr<FiniteCategory> category_from_json(const json& j);
// Same objects and morphisms (ids, endpoints, codes, words, classes) in the same order.
bool same_category(const FiniteCategory& a, const FiniteCategory& b);

// {"kind", "max", "max_arity"}; parameterised shapes are rebuilt on load.
json shape_ref(const ShapeCategory& shape);
json shape_to_json(const ShapeCategory& shape);

// Hands out one shape per parameter set, so presheaves read in one run
// share their shape.  Simplex shapes come from an already registered host
// with that truncation when there is one.
class ShapeRegistry {
 public:
  ShapePtr get(ShapeKind kind, int max, int max_arity = 2);
  // Accepts a shape reference or a full shape document.
  ShapePtr resolve(const json& j);

 private:
  std::map<std::tuple<int, int, int>, ShapePtr> shapes_;
};

json presheaf_to_json(const Presheaf& X);
PresheafPtr presheaf_from_json(const json& j, ShapeRegistry& shapes);

// {"source", "target", "components": {object: [target element per source element]}}
json map_to_json(const PresheafMap& f);
PresheafMap map_from_json(const json& j, ShapeRegistry& shapes);

// Either {"elements": [...], "table": [[...]]} for a one-object category, or
// {"objects", "arrows": [{"name", "dom", "cod"}], "identities", "table"}.
SmallCategory small_category_from_json(const json& j);
json small_category_to_json(const SmallCategory& C);

std::string export_dot(const FiniteCategory& cat, bool generators_only = true);
std::string export_dot(const Presheaf& X);
std::string export_dot(const PlanarTree& tree);

}  // namespace augcat
