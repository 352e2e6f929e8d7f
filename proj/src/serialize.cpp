#include "tatecm/serialize.hpp"

namespace tatecm {

using nlohmann::json;

namespace {

json module_to_json(int position, const GradedFreeModule& m)
{
    json twists = json::array(), labels = json::array();
    for (std::size_t j = 0; j < m.rank(); ++j) {
        twists.push_back(-m.degrees[j]);
        labels.push_back(m.label(j));
    }
    return {{"position", position}, {"twists", twists}, {"labels", labels}};
}

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::FormatError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::FormatError, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

json matrix_to_json(const PolyMatrix& M)
{
    json rows = json::array();
    for (std::size_t r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < M.cols(); ++c)
            row.push_back(M(r, c).to_string());
        rows.push_back(row);
    }
    return rows;
}

json complex_to_json(const ChainComplex& C)
{
    const RingPtr& ring = C.over()->ring();
    json ideal = json::array();
    for (const auto& g : C.over()->original())
        ideal.push_back(g.to_string());
    json terms = json::array(), diffs = json::array();
    for (int i = C.lo(); i <= C.hi(); ++i) {
        terms.push_back(module_to_json(i, C.term_ref(i)));
        if (C.has_diff(i))
            diffs.push_back({{"position", i}, {"entries", matrix_to_json(C.diff_ref(i))}});
    }
    return {{"field_char", ring->field.characteristic()},
            {"variables", ring->vars},
            {"ideal", ideal},
            {"lo", C.lo()},
            {"hi", C.hi()},
            {"bounded_below", C.bounded_below()},
            {"bounded_above", C.bounded_above()},
            {"terms", terms},
            {"differentials", diffs}};
}

ChainComplex complex_from_json(const json& j)
{
    const auto p = field<std::uint32_t>(j, "field_char");
    RingPtr ring = make_ring(field<std::vector<std::string>>(j, "variables"), p);
    std::vector<Polynomial> ideal;
    for (const auto& s : field<std::vector<std::string>>(j, "ideal"))
        ideal.push_back(parse_polynomial(s, ring));
    BaseRing over = ideal.empty() ? polynomial_base(ring) : make_base_ring(ideal);

    const int lo = field<int>(j, "lo"), hi = field<int>(j, "hi");
    const json& jt = j.at("terms");
    if (!jt.is_array() || jt.size() != static_cast<std::size_t>(hi - lo + 1))
        throw Error(ErrorKind::FormatError, "expected one term per position of the window");
    std::vector<GradedFreeModule> terms;
    for (std::size_t k = 0; k < jt.size(); ++k) {
        if (field<int>(jt[k], "position") != lo + static_cast<int>(k))
            throw Error(ErrorKind::FormatError, "terms out of order");
        GradedFreeModule m{over, {}, field<std::vector<std::string>>(jt[k], "labels")};
        for (int t : field<std::vector<int>>(jt[k], "twists"))
            m.degrees.push_back(-t);
        if (m.labels.size() != m.degrees.size())
            throw Error(ErrorKind::FormatError, "labels and twists differ in length");
        terms.push_back(std::move(m));
    }
    const json& jd = j.at("differentials");
    if (!jd.is_array() || jd.size() != static_cast<std::size_t>(hi - lo))
        throw Error(ErrorKind::FormatError, "expected one differential per position above lo");
    std::vector<PolyMatrix> diffs;
    for (std::size_t k = 0; k < jd.size(); ++k) {
        const int i = lo + 1 + static_cast<int>(k);
        if (field<int>(jd[k], "position") != i)
            throw Error(ErrorKind::FormatError, "differentials out of order");
        const auto rows = field<std::vector<std::vector<std::string>>>(jd[k], "entries");
        const GradedFreeModule& tgt = terms[k];
        const GradedFreeModule& src = terms[k + 1];
        if (rows.size() != tgt.rank())
            throw Error(ErrorKind::FormatError, "d_" + std::to_string(i) + " has the wrong number of rows");
        PolyMatrix d(tgt, src, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != src.rank())
                throw Error(ErrorKind::FormatError, "d_" + std::to_string(i) + " has the wrong number of columns");
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                d.set(r, c, parse_polynomial(rows[r][c], ring));
        }
        diffs.push_back(std::move(d));
    }
    return ChainComplex(over, lo, std::move(terms), std::move(diffs), field<bool>(j, "bounded_below"),
                        field<bool>(j, "bounded_above"));
}

json betti_to_json(const std::map<int, std::vector<int>>& betti)
{
    json out = json::array();
    for (const auto& [i, degs] : betti) {
        std::map<int, int> counts;
        for (int d : degs)
            ++counts[d];
        for (const auto& [d, n] : counts)
            out.push_back({i, d, n});
    }
    return out;
}

}  // namespace tatecm
