#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "descenso/triangles.hpp"
#include "descenso/verify.hpp"

using namespace descenso;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;

Json read_json(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) throw std::runtime_error("cannot open " + path);
        in = &file;
    }
    return Json::parse(*in);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

uint64_t env_seed(uint64_t cli_seed) {
    if (const char* env = std::getenv("DESCENSO_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

int run_reports(const std::vector<VerificationReport>& reports, const std::string& format) {
    bool ok = true;
    if (format == "md") {
        for (const auto& r : reports) {
            std::cout << report_to_markdown(r);
            ok = ok && r.passed();
        }
    } else {
        Json out = Json::array();
        for (const auto& r : reports) {
            out.push_back(report_to_json(r));
            ok = ok && r.passed();
        }
        emit(out);
    }
    return ok ? kExitPass : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"descenso: simplicial descent structures over rational chain complexes"};
    app.require_subcommand(1);

    std::string input, input2, format = "json";
    uint64_t seed = 1;
    size_t cases = 50, max_dim = 4, max_deg = 3, truncation = 3, page_r = 1, threads = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json or md");
        cmd->add_option("--seed", seed, "sweep seed (DESCENSO_SEED overrides)");
        cmd->add_option("--cases", cases, "cases per suite");
        cmd->add_option("--max-dim", max_dim, "generator dimension cap");
        cmd->add_option("--max-deg", max_deg, "generator degree cap");
        cmd->add_option("--truncation", truncation, "simplicial truncation for sweeps");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    };

    auto* homology_cmd = app.add_subcommand("homology", "homology dimensions of a complex");
    homology_cmd->add_option("input", input, "ChainComplex JSON (- for stdin)");
    auto* cone_cmd = app.add_subcommand("cone", "descent cone of a chain map");
    cone_cmd->add_option("input", input, "ChainMap JSON");
    auto* suspend_cmd = app.add_subcommand("suspend", "suspension of a complex");
    suspend_cmd->add_option("input", input, "ChainComplex JSON");
    auto* cyl_cmd = app.add_subcommand("cyl", "cylinder of a complex with its structure maps");
    cyl_cmd->add_option("input", input, "ChainComplex JSON");
    auto* compose_cmd = app.add_subcommand("roof-compose", "compose two roofs (second after first)");
    compose_cmd->add_option("first", input, "Roof JSON for the first map A => B");
    compose_cmd->add_option("second", input2, "Roof JSON for the second map B => C");
    auto* ss_cmd = app.add_subcommand("ss", "spectral sequence page of a filtered complex");
    ss_cmd->add_option("input", input, "FilteredComplex JSON");
    ss_cmd->add_option("--page", page_r, "page index r");
    auto* dec_cmd = app.add_subcommand("dec", "Deligne shift of a filtered complex");
    dec_cmd->add_option("input", input, "FilteredComplex JSON");

    auto* ax_cmd = app.add_subcommand("verify-axioms", "descent axiom sweeps");
    add_common(ax_cmd);
    auto* tr_cmd = app.add_subcommand("verify-triangles", "triangulated structure sweeps");
    add_common(tr_cmd);
    auto* cg_cmd = app.add_subcommand("verify-cogroup", "cogroup and coaction sweeps");
    add_common(cg_cmd);
    auto* fl_cmd = app.add_subcommand("verify-filtered", "filtered and spectral sweeps");
    add_common(fl_cmd);
    auto* rp_cmd = app.add_subcommand("report", "run every suite and emit a combined report");
    add_common(rp_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        SweepOptions opt;
        opt.seed = env_seed(seed);
        opt.cases = cases;
        opt.max_dim = max_dim;
        opt.max_deg = max_deg;
        opt.truncation = truncation;
        opt.threads = threads;

        if (homology_cmd->parsed()) {
            ChainComplex c = chain_complex_from_json(read_json(input));
            Json out;
            Json dims = Json::object();
            for (size_t n = 0; n <= c.top(); ++n)
                dims[std::to_string(n)] = c.homology().dim(n);
            out["homology"] = std::move(dims);
            emit(out);
            return kExitPass;
        }
        if (cone_cmd->parsed()) {
            ChainMap f = chain_map_from_json(read_json(input));
            DescentCone dc = cone(f);
            Json out;
            out["cone"] = to_json(dc.total);
            out["inclusion"] = to_json(dc.include);
            out["projection"] = to_json(dc.project);
            emit(out);
            return kExitPass;
        }
        if (suspend_cmd->parsed()) {
            ChainComplex c = chain_complex_from_json(read_json(input));
            emit(to_json(suspend(c).total));
            return kExitPass;
        }
        if (cyl_cmd->parsed()) {
            ChainComplex c = chain_complex_from_json(read_json(input));
            CylObject co = cyl_object(c);
            Json out;
            out["cylinder"] = to_json(co.cyl.carrier);
            out["i"] = to_json(co.i);
            out["j"] = to_json(co.j);
            out["sigma"] = to_json(co.sigma);
            emit(out);
            return kExitPass;
        }
        if (compose_cmd->parsed()) {
            Roof first = roof_from_json(read_json(input));
            Roof second = roof_from_json(read_json(input2));
            emit(to_json(roof_compose(second, first)));
            return kExitPass;
        }
        if (ss_cmd->parsed()) {
            FilteredComplex f = filtered_complex_from_json(read_json(input));
            emit(to_json(page(f, page_r)));
            return kExitPass;
        }
        if (dec_cmd->parsed()) {
            FilteredComplex f = filtered_complex_from_json(read_json(input));
            emit(to_json(dec(f)));
            return kExitPass;
        }
        if (ax_cmd->parsed())
            return run_reports({verify_axioms(opt), verify_comparison(opt), verify_fractions(opt)},
                               format);
        if (tr_cmd->parsed())
            return run_reports({verify_cone_oracle(opt), verify_triangles(opt), verify_minus(opt),
                                verify_stability(opt)},
                               format);
        if (cg_cmd->parsed()) return run_reports({verify_cogroup(opt)}, format);
        if (fl_cmd->parsed()) return run_reports({verify_filtered(opt)}, format);
        if (rp_cmd->parsed()) return run_reports(verify_all(opt), format);
    } catch (const Json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
