#include "descenso/json_io.hpp"

namespace descenso {

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("scalar: expected a string like \"p/q\"");
    return Rational::parse(j.get<std::string>());
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix: expected an array of rows");
    size_t rows = j.size();
    size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (j.at(i).size() != cols) throw std::invalid_argument("matrix: ragged rows");
        for (size_t c = 0; c < cols; ++c) m.at(i, c) = rational_from_json(j.at(i).at(c));
    }
    return m;
}

namespace {
Matrix matrix_from_json_shaped(const Json& j, size_t rows, size_t cols) {
    Matrix m = matrix_from_json(j);
    if (m.rows() == 0 && m.cols() == 0) return Matrix(rows, cols);
    if (m.rows() != rows || (rows > 0 && m.cols() != cols))
        throw std::invalid_argument("matrix: shape mismatch with declared dims");
    if (m.rows() == rows && m.cols() != cols && rows == 0) return Matrix(rows, cols);
    return m;
}
}  // namespace

Json to_json(const ChainComplex& c) {
    Json j;
    j["dims"] = c.dims();
    Json d = Json::object();
    for (size_t n = 1; n <= c.top(); ++n) d[std::to_string(n)] = to_json(c.d(n));
    j["d"] = std::move(d);
    return j;
}

ChainComplex chain_complex_from_json(const Json& j) {
    std::vector<size_t> dims = j.at("dims").get<std::vector<size_t>>();
    if (dims.empty()) dims.push_back(0);
    std::vector<Matrix> diffs;
    for (size_t n = 1; n < dims.size(); ++n) {
        std::string key = std::to_string(n);
        if (j.contains("d") && j.at("d").contains(key))
            diffs.push_back(matrix_from_json_shaped(j.at("d").at(key), dims[n - 1], dims[n]));
        else
            diffs.emplace_back(dims[n - 1], dims[n]);
    }
    return ChainComplex(std::move(dims), std::move(diffs));
}

Json to_json(const ChainMap& f) {
    Json j;
    j["source"] = to_json(f.source());
    j["target"] = to_json(f.target());
    Json comps = Json::object();
    for (size_t n = 0; n <= std::max(f.source().top(), f.target().top()); ++n)
        comps[std::to_string(n)] = to_json(f.component(n));
    j["f"] = std::move(comps);
    return j;
}

ChainMap chain_map_from_json(const Json& j) {
    ChainComplex src = chain_complex_from_json(j.at("source"));
    ChainComplex tgt = chain_complex_from_json(j.at("target"));
    size_t degs = std::max(src.top(), tgt.top()) + 1;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        std::string key = std::to_string(n);
        if (j.contains("f") && j.at("f").contains(key))
            comps[n] = matrix_from_json_shaped(j.at("f").at(key), tgt.dim(n), src.dim(n));
        else
            comps[n] = Matrix(tgt.dim(n), src.dim(n));
    }
    return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

Json to_json(const Roof& r) {
    Json j;
    j["forward"] = to_json(r.forward);
    j["backward"] = to_json(r.backward);
    return j;
}

Roof roof_from_json(const Json& j) {
    Roof r{chain_map_from_json(j.at("forward")), chain_map_from_json(j.at("backward"))};
    if (!(r.forward.target() == r.backward.target()))
        throw std::invalid_argument("roof: legs must share their target");
    if (!is_qis(r.backward)) throw std::invalid_argument("roof: backward leg must be an equivalence");
    return r;
}

Json to_json(const SSet& k) {
    Json j;
    j["truncation"] = k.trunc();
    Json levels = Json::array();
    for (size_t n = 0; n <= k.trunc(); ++n) levels.push_back(k.ids(n));
    j["levels"] = std::move(levels);
    Json faces = Json::object();
    for (size_t n = 1; n <= k.trunc(); ++n) {
        Json per_i = Json::array();
        for (size_t i = 0; i <= n; ++i) {
            Json m = Json::object();
            for (size_t s = 0; s < k.size(n); ++s)
                m[k.id(n, static_cast<int>(s))] = k.id(n - 1, k.face(n, i, static_cast<int>(s)));
            per_i.push_back(std::move(m));
        }
        faces[std::to_string(n)] = std::move(per_i);
    }
    j["faces"] = std::move(faces);
    Json degens = Json::object();
    for (size_t n = 0; n < k.trunc(); ++n) {
        Json per_j = Json::array();
        for (size_t i = 0; i <= n; ++i) {
            Json m = Json::object();
            for (size_t s = 0; s < k.size(n); ++s)
                m[k.id(n, static_cast<int>(s))] = k.id(n + 1, k.degen(n, i, static_cast<int>(s)));
            per_j.push_back(std::move(m));
        }
        degens[std::to_string(n)] = std::move(per_j);
    }
    j["degeneracies"] = std::move(degens);
    if (k.pointed()) j["basepoint"] = k.id(0, k.basepoint());
    return j;
}

SSetPtr sset_from_json(const Json& j) {
    size_t trunc = j.at("truncation").get<size_t>();
    std::vector<std::vector<std::string>> ids(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) ids[n] = j.at("levels").at(n).get<std::vector<std::string>>();
    std::vector<std::map<std::string, int>> index(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n)
        for (size_t s = 0; s < ids[n].size(); ++s) index[n][ids[n][s]] = static_cast<int>(s);
    std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
    for (size_t n = 1; n <= trunc; ++n) {
        const Json& per_i = j.at("faces").at(std::to_string(n));
        faces[n].resize(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            faces[n][i].resize(ids[n].size());
            for (size_t s = 0; s < ids[n].size(); ++s)
                faces[n][i][s] = index[n - 1].at(per_i.at(i).at(ids[n][s]).get<std::string>());
        }
    }
    for (size_t n = 0; n < trunc; ++n) {
        const Json& per_j = j.at("degeneracies").at(std::to_string(n));
        degens[n].resize(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            degens[n][i].resize(ids[n].size());
            for (size_t s = 0; s < ids[n].size(); ++s)
                degens[n][i][s] = index[n + 1].at(per_j.at(i).at(ids[n][s]).get<std::string>());
        }
    }
    std::optional<int> base;
    if (j.contains("basepoint")) base = index[0].at(j.at("basepoint").get<std::string>());
    return std::make_shared<SSet>(trunc, std::move(ids), std::move(faces), std::move(degens), base);
}

Json to_json(const SimpObj& x) {
    Json j;
    j["truncation"] = x.trunc();
    Json levels = Json::array();
    for (size_t n = 0; n <= x.trunc(); ++n) levels.push_back(to_json(x.level(n)));
    j["levels"] = std::move(levels);
    Json faces = Json::object();
    for (size_t n = 1; n <= x.trunc(); ++n) {
        Json per_i = Json::array();
        for (size_t i = 0; i <= n; ++i) per_i.push_back(to_json(x.face(n, i)));
        faces[std::to_string(n)] = std::move(per_i);
    }
    j["faces"] = std::move(faces);
    Json degens = Json::object();
    for (size_t n = 0; n < x.trunc(); ++n) {
        Json per_j = Json::array();
        for (size_t i = 0; i <= n; ++i) per_j.push_back(to_json(x.degen(n, i)));
        degens[std::to_string(n)] = std::move(per_j);
    }
    j["degeneracies"] = std::move(degens);
    return j;
}

Json to_json(const CochainComplex& c) {
    Json j;
    j["dims"] = c.dims();
    Json d = Json::object();
    for (size_t n = 0; n < c.top(); ++n) d[std::to_string(n)] = to_json(c.d(n));
    j["d"] = std::move(d);
    return j;
}

CochainComplex cochain_complex_from_json(const Json& j) {
    std::vector<size_t> dims = j.at("dims").get<std::vector<size_t>>();
    if (dims.empty()) dims.push_back(0);
    std::vector<Matrix> diffs;
    for (size_t n = 0; n + 1 < dims.size(); ++n) {
        std::string key = std::to_string(n);
        if (j.contains("d") && j.at("d").contains(key))
            diffs.push_back(matrix_from_json_shaped(j.at("d").at(key), dims[n + 1], dims[n]));
        else
            diffs.emplace_back(dims[n + 1], dims[n]);
    }
    return CochainComplex(std::move(dims), std::move(diffs));
}

Json to_json(const FilteredComplex& f) {
    Json j;
    j["complex"] = to_json(f.complex());
    j["lo"] = f.lo();
    j["hi"] = f.hi();
    Json filt = Json::object();
    for (int p = f.lo(); p <= f.hi(); ++p)
        for (size_t n = 0; n <= f.complex().top(); ++n) {
            std::string key = std::to_string(p) + "," + std::to_string(n);
            filt[key] = to_json(f.filtration(p, n).basis);
        }
    j["filtration"] = std::move(filt);
    return j;
}

FilteredComplex filtered_complex_from_json(const Json& j) {
    CochainComplex c = cochain_complex_from_json(j.at("complex"));
    int lo = j.at("lo").get<int>();
    int hi = j.at("hi").get<int>();
    std::vector<std::vector<Subspace>> filt(c.top() + 1);
    for (size_t n = 0; n <= c.top(); ++n)
        for (int p = lo; p <= hi; ++p) {
            std::string key = std::to_string(p) + "," + std::to_string(n);
            Matrix basis(c.dim(n), 0);
            if (j.at("filtration").contains(key)) {
                basis = matrix_from_json(j.at("filtration").at(key));
                if (basis.rows() == 0 && basis.cols() == 0) basis = Matrix(c.dim(n), 0);
                if (basis.rows() != c.dim(n))
                    throw std::invalid_argument("filtration: basis ambient mismatch at " + key);
            }
            filt[n].push_back(Subspace{c.dim(n), std::move(basis)});
        }
    return FilteredComplex(std::move(c), lo, hi, std::move(filt));
}

Json to_json(const SpectralPage& p) {
    Json j;
    j["r"] = p.r;
    Json terms = Json::object();
    for (const auto& [key, term] : p.terms) {
        if (term.dim == 0) continue;
        terms[std::to_string(key.first) + "," + std::to_string(key.second)] = term.dim;
    }
    j["terms"] = std::move(terms);
    Json d = Json::object();
    for (const auto& [key, m] : p.d) {
        if (m.rows() == 0 || m.cols() == 0) continue;
        d[std::to_string(key.first) + "," + std::to_string(key.second)] = to_json(m);
    }
    j["d_r"] = std::move(d);
    return j;
}

}  // namespace descenso
