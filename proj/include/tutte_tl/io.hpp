#pragma once

#include <string>

#include <json.hpp>

#include "tutte_tl/circuit.hpp"
#include "tutte_tl/tangle.hpp"

namespace ttl {

using json = nlohmann::json;

json complex_json(cplx z);
cplx complex_from_json(const json& j, const std::string& where);

// Accepts "a+bi", "a-bi", "a", "bi", "i", "-i".
cplx parse_complex(const std::string& s);

json program_to_json(const TangleProgram& p);
TangleProgram program_from_json(const json& j);

json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json matrix_to_json(const Mat& m);

// Parses text; ParseError carries the byte offset or the field path.
json parse_json_text(const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace ttl
