#include "qgraph/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qgraph {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected a [re, im] pair");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const std::size_t n_rows = j.size();
    const std::size_t n_cols = j[0].is_array() ? j[0].size() : 0;
    if (n_cols == 0) throw ParseError("matrix rows must be non-empty arrays");
    CMatrix m(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (!j[i].is_array() || j[i].size() != n_cols) throw ParseError("ragged matrix rows");
        for (std::size_t c = 0; c < n_cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    require_finite(m);
    return m;
}

Json vector_to_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
    return out;
}

CVector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("vector must be a non-empty array");
    CVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
    return v;
}

Json isometry_to_json(const Isometry& t) {
    Json cols = Json::array();
    for (int j = 0; j < t.k(); ++j) cols.push_back(vector_to_json(t.matrix().col(j)));
    return Json{{"n", t.n()}, {"k", t.k()}, {"columns", std::move(cols)}};
}

Isometry isometry_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    const Json& cols = j.at("columns");
    if (!cols.is_array() || static_cast<int>(cols.size()) != k) {
        throw ParseError("isometry column count disagrees with k");
    }
    CMatrix m(n, k);
    for (int c = 0; c < k; ++c) {
        const CVector v = vector_from_json(cols[c]);
        if (v.size() != n) throw ParseError("isometry column has wrong length");
        m.col(c) = v;
    }
    return Isometry(std::move(m), 1e-8);
}

Json coloring_to_json(const Coloring& c) {
    Json parts = Json::array();
    for (const Isometry& part : c.parts) parts.push_back(isometry_to_json(part));
    return parts;
}

Coloring coloring_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("coloring must be an array of isometries");
    Coloring c;
    for (const Json& part : j) c.parts.push_back(isometry_from_json(part));
    return c;
}

Json system_to_json(const SystemFile& f) {
    Json out;
    if (!f.name.empty()) out["name"] = f.name;
    out["n"] = f.n;
    Json gens = Json::array();
    for (const CMatrix& g : f.generators) gens.push_back(matrix_to_json(g));
    out["generators"] = std::move(gens);
    return out;
}

SystemFile system_from_json(const Json& j) {
    SystemFile f;
    f.name = j.value("name", std::string{});
    f.n = j.at("n").get<int>();
    if (f.n < 1) throw ParseError("system file needs n >= 1");
    for (const Json& g : j.at("generators")) {
        CMatrix m = matrix_from_json(g);
        if (m.rows() != f.n || m.cols() != f.n) {
            throw ParseError("generator is not n x n");
        }
        f.generators.push_back(std::move(m));
    }
    return f;
}

Json load_json(const std::string& path) {
    const std::string text = read_file(path);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + path);
    return j;
}

void save_json(const Json& j, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write " + tmp);
        out << j.dump() << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw ParseError("cannot move " + tmp + " into place");
    }
}

SystemFile load_system(const std::string& path) { return system_from_json(load_json(path)); }

void save_system(const SystemFile& f, const std::string& path) {
    save_json(system_to_json(f), path);
}

CMatrix load_matrix(const std::string& path) {
    const Json j = load_json(path);
    const CMatrix m = matrix_from_json(j.at("matrix"));
    if (j.contains("n") && j.at("n").get<int>() != m.rows()) {
        throw ParseError("matrix size disagrees with declared n");
    }
    return m;
}

Isometry load_isometry(const std::string& path) { return isometry_from_json(load_json(path)); }

CVector load_vector(const std::string& path) {
    const Json j = load_json(path);
    return vector_from_json(j.at("vector"));
}

std::string file_digest(const std::string& path) {
    const std::string bytes = read_file(path);
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a:") + buf;
}

} // namespace qgraph
