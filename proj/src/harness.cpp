#include "tatecm/harness.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <set>
#include <functional>
#include <sstream>

#include "tatecm/serialize.hpp"

namespace tatecm {

using nlohmann::json;

namespace {

const std::set<std::string> kInstanceFields{"field_char", "variables", "f", "g", "A", "window",
                                            "max_internal_degree"};

template <class T>
T read(const json& j, const std::string& key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::FormatError, "field '" + key + "': " + e.what());
    }
}

std::string certificate_witness(const std::optional<EntryWitness>& w)
{
    if (!w)
        return "";
    return "position " + std::to_string(w->position) + " entry (" + std::to_string(w->row) + "," +
           std::to_string(w->col) + ") = " + w->entry;
}

// Upper end of the degree sweep when the instance leaves it open.
int default_dmax(const ShamashResolution& F, int m, int twist, int lo, int hi)
{
    int top = INT_MIN;
    for (int i = 0; i <= std::min(hi, F.length()); ++i)
        for (int d : F.complex.term_ref(i).degrees)
            top = std::max(top, d);
    for (int i = std::max(0, m - hi - 1); i <= std::min(F.length(), m - lo); ++i)
        for (int d : F.complex.term_ref(i).degrees)
            top = std::max(top, twist - d);
    return top + 6;
}

}  // namespace

json ProblemInstance::to_json() const
{
    json j{{"field_char", field_char},
           {"variables", variables},
           {"f", f},
           {"g", g},
           {"window", {window_lo, window_hi}}};
    if (A)
        j["A"] = *A;
    if (max_internal_degree)
        j["max_internal_degree"] = *max_internal_degree;
    return j;
}

ProblemInstance parse_instance(const json& j)
{
    if (!j.is_object())
        throw Error(ErrorKind::FormatError, "instance must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kInstanceFields.count(key))
            throw Error(ErrorKind::FormatError, "unknown field '" + key + "'");
    for (const char* key : {"variables", "f", "g"})
        if (!j.contains(key))
            throw Error(ErrorKind::FormatError, std::string("missing field '") + key + "'");
    ProblemInstance inst;
    if (j.contains("field_char"))
        inst.field_char = read<std::uint32_t>(j, "field_char");
    inst.variables = read<std::vector<std::string>>(j, "variables");
    inst.f = read<std::vector<std::string>>(j, "f");
    inst.g = read<std::vector<std::string>>(j, "g");
    if (j.contains("A"))
        inst.A = read<std::vector<std::vector<std::string>>>(j, "A");
    if (j.contains("window")) {
        const auto w = read<std::vector<int>>(j, "window");
        if (w.size() != 2 || w[0] >= w[1])
            throw Error(ErrorKind::FormatError, "window must be [lo, hi] with lo < hi");
        inst.window_lo = w[0];
        inst.window_hi = w[1];
    }
    if (j.contains("max_internal_degree"))
        inst.max_internal_degree = read<int>(j, "max_internal_degree");
    return inst;
}

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::IoError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::FormatError, path + ": " + e.what());
    }
}

void save_json(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::IoError, "cannot write " + path);
    out << j.dump(1) << '\n';
    if (!out)
        throw Error(ErrorKind::IoError, "write failed for " + path);
}

ProblemInstance load_instance(const std::string& path)
{
    return parse_instance(load_json(path));
}

json run_build(const ProblemInstance& inst)
{
    auto context = [](const std::string& fieldname, const std::function<void()>& body) {
        try {
            body();
        } catch (const Error& e) {
            std::string what = e.what();
            const std::string prefix = std::string(to_string(e.kind())) + ": ";
            if (what.rfind(prefix, 0) == 0)
                what.erase(0, prefix.size());
            throw Error(e.kind(), fieldname + ": " + what);
        }
    };
    RingPtr ring;
    context("variables", [&] { ring = make_ring(inst.variables, inst.field_char); });
    std::vector<Polynomial> f, g;
    context("f", [&] {
        for (const auto& s : inst.f)
            f.push_back(parse_polynomial(s, ring));
    });
    context("g", [&] {
        for (const auto& s : inst.g)
            g.push_back(parse_polynomial(s, ring));
    });
    std::optional<std::vector<std::vector<Polynomial>>> A;
    context("A", [&] {
        if (!inst.A)
            return;
        A.emplace();
        for (const auto& row : *inst.A) {
            A->emplace_back();
            for (const auto& s : row)
                A->back().push_back(parse_polynomial(s, ring));
        }
    });
    if (f.size() < g.size())
        throw Error(ErrorKind::InvalidArgument, "g: more elements than f");
    const int m = static_cast<int>(f.size() - g.size());
    const int lo = inst.window_lo, hi = inst.window_hi;
    if (lo >= 0 || hi < 1)
        throw Error(ErrorKind::WindowTooSmall, "window: must contain positions -1, 0 and 1");

    if (!A)
        context("g", [&] {
            for (const auto& gj : g)
                lift_through(gj, f);
        });
    std::optional<ShamashResolution> F;
    context("f, g, A", [&] { F.emplace(es_resolution(f, g, A, required_length(m, lo, hi))); });
    const int tw = tate_twist(F->lift);
    const int dmax = inst.max_internal_degree.value_or(default_dmax(*F, m, tw, lo, hi));
    TateResolution T = tate_splice(*F, lo, hi, dmax);

    json phi = json::array();
    for (int i = T.phi.lo; i <= T.phi.hi; ++i)
        phi.push_back({{"position", i}, {"entries", matrix_to_json(T.phi.at(i))}});
    const TateCertificates& c = T.cert;
    json cert{{"chain_map", c.chain_map},
              {"acyclic", c.acyclic},
              {"h0_iso", c.h0_iso},
              {"minimal_before", c.minimal_before},
              {"minimize_preserves_homology", c.minimize_preserves_homology},
              {"dmax", c.dmax},
              {"ok", c.ok()}};
    if (c.chain_witness)
        cert["chain_witness"] = certificate_witness(c.chain_witness);
    if (c.unit_witness)
        cert["unit_witness"] = certificate_witness(c.unit_witness);
    if (c.acyclic_failure)
        cert["acyclic_failure"] = {c.acyclic_failure->first, c.acyclic_failure->second};
    if (c.h0_failing_degree)
        cert["h0_failing_degree"] = *c.h0_failing_degree;

    McmPresentation pres = mcm_presentation(T.minimal);
    json splice_ranks = json::array();
    for (auto r : T.complex.ranks())
        splice_ranks.push_back(r);
    return {{"instance", inst.to_json()},
            {"codimension", m},
            {"twist", tw},
            {"phi", phi},
            {"certificates", cert},
            {"splice_ranks", splice_ranks},
            {"complex", complex_to_json(T.minimal)},
            {"betti", betti_to_json(T.minimal.betti())},
            {"mcm",
             {{"generators", pres.generators},
              {"twists", pres.twists},
              {"minimal", pres.minimal},
              {"presentation", matrix_to_json(pres.presentation)}}}};
}

bool VerifyReport::ok() const
{
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
}

std::string VerifyReport::text() const
{
    std::size_t width = 0;
    for (const auto& l : lines)
        width = std::max(width, l.name.size());
    std::ostringstream out;
    for (const auto& l : lines) {
        out << (l.ok ? "PASS  " : "FAIL  ") << l.name;
        if (!l.detail.empty())
            out << std::string(width - l.name.size() + 2, ' ') << l.detail;
        out << '\n';
    }
    return out.str();
}

VerifyReport run_verify(const json& doc, std::optional<int> dmax)
{
    const json& cj = doc.contains("complex") ? doc.at("complex") : doc;
    ChainComplex C = complex_from_json(cj);
    if (!dmax && doc.contains("certificates") && doc.at("certificates").contains("dmax"))
        dmax = doc.at("certificates").at("dmax").get<int>();
    if (!dmax) {
        const auto span = degree_span(C, C.lo(), C.hi());
        dmax = span.second + 6;
    }
    VerifyReport rep;

    CheckLine grading{"grading", true, ""};
    for (int i = C.lo() + 1; i <= C.hi() && grading.ok; ++i)
        try {
            C.diff_ref(i).validate();
        } catch (const Error& e) {
            grading = {"grading", false, "d_" + std::to_string(i) + ": " + e.what()};
        }
    rep.lines.push_back(grading);

    CheckLine square{"d^2 = 0", true, ""};
    if (auto w = C.square_witness()) {
        square.ok = false;
        square.detail = certificate_witness(w);
    }
    rep.lines.push_back(square);

    CheckLine acyc{"acyclic", true, ""};
    if (!grading.ok) {
        acyc = {"acyclic", false, "skipped: grading is broken"};
    } else if (auto fail = acyclicity_failure(C, C.lo(), C.hi(), *dmax)) {
        acyc = {"acyclic", false, "H_" + std::to_string(fail->first) + " in degree " + std::to_string(fail->second)};
    } else {
        acyc.detail = "positions " + std::to_string(C.lo() + 1) + ".." + std::to_string(C.hi() - 1) +
                      ", degrees up to " + std::to_string(*dmax);
    }
    rep.lines.push_back(acyc);

    for (int edge : {C.lo(), C.hi()}) {
        CheckLine line{"boundary H_" + std::to_string(edge), true, ""};
        try {
            const auto span = degree_span(C, edge, edge);
            homology_dims(C, edge, span.first, span.first);
            line.detail = "bounded end";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::WindowEdge)
                throw;
            line.detail = "WindowEdge: not determined by the window";
        }
        rep.lines.push_back(line);
    }

    CheckLine minimal{"minimal", true, ""};
    for (int i = C.lo() + 1; i <= C.hi() && minimal.ok; ++i)
        if (auto w = C.diff_ref(i).first_unit()) {
            w->position = i;
            minimal = {"minimal", false, "unit at " + certificate_witness(w)};
        }
    rep.lines.push_back(minimal);
    return rep;
}

BettiTable betti_from_json(const json& triples)
{
    BettiTable out;
    for (const auto& t : triples) {
        const int i = t.at(0).get<int>(), d = t.at(1).get<int>(), n = t.at(2).get<int>();
        auto& v = out[i];
        v.insert(v.end(), static_cast<std::size_t>(n), d);
    }
    for (auto& [i, v] : out)
        std::sort(v.begin(), v.end());
    return out;
}

std::string format_betti(const BettiTable& betti)
{
    if (betti.empty())
        return "";
    const int lo = betti.begin()->first, hi = betti.rbegin()->first;
    int rlo = INT_MAX, rhi = INT_MIN;
    for (const auto& [i, degs] : betti)
        for (int d : degs) {
            rlo = std::min(rlo, d - i);
            rhi = std::max(rhi, d - i);
        }
    const int w = 5;
    auto cell = [&](const std::string& s) { return std::string(static_cast<std::size_t>(std::max(0, w - static_cast<int>(s.size()))), ' ') + s; };
    std::ostringstream out;
    out << cell("");
    for (int i = lo; i <= hi; ++i)
        out << cell(std::to_string(i));
    out << "\n" << cell("total");
    for (int i = lo; i <= hi; ++i)
        out << cell(std::to_string(betti.count(i) ? betti.at(i).size() : 0));
    out << '\n';
    for (int r = rlo; r <= rhi; ++r) {
        out << cell(std::to_string(r) + ":");
        for (int i = lo; i <= hi; ++i) {
            long n = 0;
            if (betti.count(i))
                n = std::count(betti.at(i).begin(), betti.at(i).end(), r + i);
            out << cell(n ? std::to_string(n) : ".");
        }
        out << '\n';
    }
    return out.str();
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::FormatError:
    case ErrorKind::IoError:
        return 4;
    case ErrorKind::NotChainMap:
    case ErrorKind::AcyclicityFails:
    case ErrorKind::H0IsoFails:
    case ErrorKind::ChainMapFails:
    case ErrorKind::H0HcNotIso:
        return 3;
    default:
        return 2;
    }
}

}  // namespace tatecm
