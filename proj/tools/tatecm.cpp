#include <iostream>

#include <CLI11.hpp>

#include "tatecm/harness.hpp"

using namespace tatecm;

namespace {

int build(const std::string& file, const std::string& out)
{
    const nlohmann::json doc = run_build(load_instance(file));
    if (out.empty()) {
        std::cout << doc.dump(1) << '\n';
    } else {
        save_json(out, doc);
        std::cout << format_betti(betti_from_json(doc.at("betti")));
        std::cout << "MCM generators: " << doc.at("mcm").at("generators").get<int>() << '\n';
    }
    if (!doc.at("certificates").at("ok").get<bool>()) {
        std::cerr << "certificate failure: " << doc.at("certificates").dump() << '\n';
        return 3;
    }
    return 0;
}

int verify(const std::string& file, std::optional<int> dmax)
{
    const VerifyReport rep = run_verify(load_json(file), dmax);
    std::cout << rep.text();
    return rep.ok() ? 0 : 3;
}

int betti(const std::string& file)
{
    const auto doc = load_json(file);
    if (!doc.contains("betti"))
        throw Error(ErrorKind::FormatError, file + ": no betti table");
    std::cout << format_betti(betti_from_json(doc.at("betti")));
    return 0;
}

int mcm(const std::string& file)
{
    const auto doc = load_json(file);
    if (!doc.contains("mcm"))
        throw Error(ErrorKind::FormatError, file + ": no MCM presentation");
    const auto& m = doc.at("mcm");
    std::cout << "generators: " << m.at("generators").get<int>() << "\ntwists:";
    for (int t : m.at("twists").get<std::vector<int>>())
        std::cout << ' ' << t;
    std::cout << "\npresentation:\n";
    for (const auto& row : m.at("presentation")) {
        for (const auto& e : row)
            std::cout << "  " << e.get<std::string>();
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tate resolutions and MCM approximations over complete intersections"};
    app.require_subcommand(1);

    std::string file, out;
    std::optional<int> dmax;
    int n = 0, c = 0;

    auto* b = app.add_subcommand("build", "run the pipeline on an instance file");
    b->add_option("file", file, "instance JSON")->required();
    b->add_option("-o,--output", out, "output JSON");
    auto* v = app.add_subcommand("verify", "recheck a built complex");
    v->add_option("file", file, "output JSON")->required();
    v->add_option("--dmax", dmax, "internal degree bound");
    auto* bt = app.add_subcommand("betti", "print the Betti table");
    bt->add_option("file", file, "output JSON")->required();
    auto* mc = app.add_subcommand("mcm", "print the MCM presentation");
    mc->add_option("file", file, "output JSON")->required();
    auto* cf = app.add_subcommand("count-formula", "generator count of the MCM approximation");
    cf->add_option("--n", n, "length of f")->required();
    cf->add_option("--c", c, "length of g")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (b->parsed())
            return build(file, out);
        if (v->parsed())
            return verify(file, dmax);
        if (bt->parsed())
            return betti(file);
        if (mc->parsed())
            return mcm(file);
        std::cout << "formula: " << mcm_generator_count(n, c) << '\n'
                  << "built layout: " << tate_layout_generator_count(n, c) << '\n';
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}
