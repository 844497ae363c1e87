#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qgraph/coloring.hpp"
#include "qgraph/deciders.hpp"

namespace qgraph {

using Json = nlohmann::ordered_json;

/// On-disk description of an operator system: ambient size and a generator
/// list with [re, im] entry pairs, rows outer.
struct SystemFile {
    int n = 0;
    std::vector<CMatrix> generators;
    std::string name; // optional

    OperatorSystem build(const ToleranceConfig& cfg = {}) const {
        return build_system(n, generators, cfg);
    }
};

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);
Json isometry_to_json(const Isometry& t);
Isometry isometry_from_json(const Json& j);
Json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

Json system_to_json(const SystemFile& f);
SystemFile system_from_json(const Json& j);

SystemFile load_system(const std::string& path);
void save_system(const SystemFile& f, const std::string& path);

CMatrix load_matrix(const std::string& path);     ///< {"n":..., "matrix":[...]}
Isometry load_isometry(const std::string& path);  ///< {"n":..., "k":..., "columns":[...]}
CVector load_vector(const std::string& path);     ///< {"n":..., "vector":[...]}

Json load_json(const std::string& path); ///< throws ParseError
void save_json(const Json& j, const std::string& path); ///< atomic: temp file + rename

/// FNV-1a over the raw file bytes, for report/input pairing.
std::string file_digest(const std::string& path);

} // namespace qgraph
