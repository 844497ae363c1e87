#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgraph/gallery.hpp"
#include "qgraph/io.hpp"

namespace {

using namespace qgraph;

// Exit contract: 0 for positive verdicts, 1 for negative verdicts carrying a
// witness, 2 for borderline or inconsistent outcomes, 3 for unusable input.
constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBorderline = 2;
constexpr int kExitBadInput = 3;

struct CommonFlags {
    int samples = 128;
    std::uint64_t seed = 0;
    double rank_tol = 1e-9;
    double cluster_tol = 1e-8;
    std::string out;

    ToleranceConfig tolerances() const {
        ToleranceConfig cfg;
        cfg.rank_tol = rank_tol;
        cfg.eig_cluster_tol = cluster_tol;
        cfg.validate();
        return cfg;
    }

    void attach(CLI::App* cmd, bool with_out = true) {
        cmd->add_option("--samples", samples, "randomized search budget");
        cmd->add_option("--seed", seed, "master seed for all randomness");
        cmd->add_option("--rank-tol", rank_tol, "relative singular value cutoff");
        cmd->add_option("--cluster-tol", cluster_tol, "relative eigenvalue clustering cutoff");
        if (with_out) cmd->add_option("--out", out, "also write the JSON result to this path");
    }
};

Json tolerances_json(const ToleranceConfig& cfg) {
    return Json{{"rank_tol", cfg.rank_tol},
                {"cluster_tol", cfg.eig_cluster_tol},
                {"circle_tol", cfg.circle_tol}};
}

Json base_report(const std::string& command, const CommonFlags& flags) {
    Json report;
    report["command"] = command;
    report["seed"] = flags.seed;
    report["samples"] = flags.samples;
    report["tolerances"] = tolerances_json(flags.tolerances());
    return report;
}

int emit(const Json& report, const CommonFlags& flags, int code) {
    Json out = report;
    out["exit_code"] = code;
    std::cout << out.dump() << "\n";
    if (!flags.out.empty()) save_json(out, flags.out);
    return code;
}

CMatrix diag_matrix(const std::vector<double>& entries) {
    if (entries.empty()) throw BadParams("--diag needs at least one entry");
    CMatrix m = CMatrix::Zero(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

struct MatrixInput {
    std::string matrix_path;
    std::vector<double> diag;

    void attach(CLI::App* cmd) {
        cmd->add_option("--matrix", matrix_path, "JSON file with {\"matrix\": [[[re,im],...],...]}");
        cmd->add_option("--diag", diag, "comma separated diagonal entries")->delimiter(',');
    }

    CMatrix load() const {
        if (!matrix_path.empty() && !diag.empty()) {
            throw BadParams("give either --matrix or --diag, not both");
        }
        if (!matrix_path.empty()) return load_matrix(matrix_path);
        if (!diag.empty()) return diag_matrix(diag);
        throw BadParams("a matrix input is required (--matrix or --diag)");
    }
};

void attach_input_fields(Json& report, const std::string& path) {
    report["input"] = path;
    report["input_digest"] = file_digest(path);
}

// ---------------------------------------------------------------------------
// gen

int run_gen(const std::string& target, const std::vector<int>& params, const MatrixInput& matrix,
            const CommonFlags& flags) {
    if (flags.out.empty()) throw BadParams("gen needs --out");
    auto need = [&](std::size_t count) {
        if (params.size() != count) {
            throw BadParams("target '" + target + "' expects " + std::to_string(count) +
                            " integer parameter(s)");
        }
    };

    SystemFile file;
    if (target == "diagonal") {
        need(1);
        if (params[0] < 1) throw BadParams("diagonal needs n >= 1");
        file.n = params[0];
        file.name = "diagonal-" + std::to_string(params[0]);
        for (int i = 0; i < params[0]; ++i) {
            CMatrix e = CMatrix::Zero(file.n, file.n);
            e(i, i) = 1.0;
            file.generators.push_back(std::move(e));
        }
    } else if (target == "bipartite") {
        need(2);
        const int m = params[0], n = params[1];
        if (m < 1 || n < 1) throw BadParams("bipartite needs m, n >= 1");
        file.n = m + n;
        file.name = "bipartite-" + std::to_string(m) + "-" + std::to_string(n);
        CMatrix upper = CMatrix::Zero(file.n, file.n);
        upper.topLeftCorner(m, m) = CMatrix::Identity(m, m);
        file.generators.push_back(std::move(upper));
        CMatrix lower = CMatrix::Zero(file.n, file.n);
        lower.bottomRightCorner(n, n) = CMatrix::Identity(n, n);
        file.generators.push_back(std::move(lower));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                CMatrix e = CMatrix::Zero(file.n, file.n);
                e(i, m + j) = 1.0;
                file.generators.push_back(std::move(e));
            }
        }
    } else if (target == "m2ds") {
        need(0);
        file.n = 4;
        file.name = "m2ds";
        for (int b : {0, 2}) {
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    CMatrix e = CMatrix::Zero(4, 4);
                    e(b + i, b + j) = 1.0;
                    file.generators.push_back(std::move(e));
                }
            }
        }
    } else if (target == "skew") {
        need(0);
        file.n = 4;
        file.name = "skew";
        for (int i = 0; i < 2; ++i) {
            for (int j = 2; j < 4; ++j) {
                CMatrix e = CMatrix::Zero(4, 4);
                e(i, j) = 1.0;
                file.generators.push_back(e);
                CMatrix f = CMatrix::Zero(4, 4);
                f(j, i) = 1.0;
                file.generators.push_back(f);
            }
        }
    } else if (target == "except") {
        need(0);
        file.n = 4;
        file.name = "except";
        file.generators = {except_generator_a(), except_generator_b()};
    } else if (target == "span-ia") {
        need(0);
        const CMatrix a = matrix.load();
        hermitian_eig(a, flags.tolerances()); // rejects non-Hermitian input
        file.n = static_cast<int>(a.rows());
        file.name = "span-ia";
        file.generators = {a};
    } else if (target == "lower-bound") {
        need(1);
        const CMatrix a = lower_bound_matrix(params[0]);
        file.n = params[0];
        file.name = "lower-bound-" + std::to_string(params[0]);
        file.generators = {a};
    } else {
        throw UnknownSystem("unknown gen target '" + target + "'");
    }

    save_system(file, flags.out);
    Json report = base_report("gen", flags);
    report["target"] = target;
    report["n"] = file.n;
    report["generators"] = file.generators.size();
    report["out"] = flags.out;
    std::cout << report.dump() << "\n";
    return kExitPositive;
}

// ---------------------------------------------------------------------------
// decide

int run_decide(const std::string& path, const std::string& mode, const CommonFlags& flags) {
    const ToleranceConfig cfg = flags.tolerances();
    const SystemFile file = load_system(path);
    const OperatorSystem system = file.build(cfg);

    Json report = base_report("decide", flags);
    report["mode"] = mode;
    attach_input_fields(report, path);
    if (!file.name.empty()) report["name"] = file.name;
    report["n"] = system.n();
    report["dim"] = system.dim();

    if (mode == "tf") {
        const TfVerdict verdict = decide_triangle_free(system, flags.samples, flags.seed, cfg);
        if (const auto* has = std::get_if<HasTriangle>(&verdict)) {
            report["verdict"] = "has-triangle";
            report["borderline"] = has->borderline;
            report["certificate"] = Json{{"witness", isometry_to_json(has->witness)}};
            return emit(report, flags, has->borderline ? kExitBorderline : kExitNegative);
        }
        const auto& none = std::get<NoTriangleFound>(verdict);
        report["verdict"] = "no-triangle-found";
        report["borderline"] = none.borderline;
        report["certificate"] =
            Json{{"samples", none.samples}, {"generic_dim", none.generic_dim}};
        return emit(report, flags, none.borderline ? kExitBorderline : kExitPositive);
    }
    if (mode == "stf") {
        report["borderline"] = false;
        StfVerdict verdict;
        try {
            verdict = decide_strongly_triangle_free(system, cfg, flags.samples, flags.seed);
        } catch (const Inconsistent& e) {
            report["verdict"] = "inconsistent";
            report["certificate"] = Json{{"reason", e.what()}};
            return emit(report, flags, kExitBorderline);
        }
        if (const auto* stf = std::get_if<Stf>(&verdict)) {
            report["verdict"] = "stf";
            Json cert;
            if (std::holds_alternative<StfSmallN>(stf->kind)) {
                report["case"] = "small-n";
            } else if (std::holds_alternative<StfSmallDim>(stf->kind)) {
                report["case"] = "small-dim";
            } else if (const auto* model = std::get_if<StfExceptModel>(&stf->kind)) {
                report["case"] = "except-model";
                cert["basis_change"] = matrix_to_json(model->basis_change);
            } else {
                report["case"] = "sub-bipartite";
                cert["anticlique_vector"] =
                    vector_to_json(std::get<StfSubBipartite>(stf->kind).v);
            }
            report["certificate"] = std::move(cert);
            return emit(report, flags, kExitPositive);
        }
        const auto& neg = std::get<NotStf>(verdict);
        report["verdict"] = "not-stf";
        report["certificate"] = Json{{"witness", isometry_to_json(neg.witness)},
                                     {"refutation", neg.refutation}};
        return emit(report, flags, kExitNegative);
    }
    if (mode == "edge") {
        const EdgeVerdict verdict = edge_predicates(system);
        report["verdict"] = "edge";
        report["borderline"] = false;
        report["certificate"] = Json{{"edge_free", verdict.edge_free},
                                     {"strongly_edge_free", verdict.strongly_edge_free}};
        return emit(report, flags, verdict.edge_free ? kExitPositive : kExitNegative);
    }
    throw BadParams("decide mode must be tf, stf or edge");
}

// ---------------------------------------------------------------------------
// color

int run_color(const std::string& mode, const MatrixInput& input, const CommonFlags& flags) {
    const ToleranceConfig cfg = flags.tolerances();
    const CMatrix a = input.load();

    Json report = base_report("color", flags);
    report["mode"] = mode;
    report["input_matrix"] = matrix_to_json(a);

    const OperatorSystem system = build_system(static_cast<int>(a.rows()), {a}, cfg);
    Coloring coloring;
    bool borderline = false;
    if (mode == "log") {
        coloring = log_coloring(a, cfg);
    } else if (mode == "m4") {
        const ChromaticM4 result = chromatic_m4(a, cfg);
        coloring = result.witness;
        borderline = result.borderline;
        report["number"] = result.number;
    } else {
        throw BadParams("color mode must be log or m4");
    }
    if (!validate_coloring(system, coloring, cfg)) {
        throw Inconsistent("computed coloring failed re-validation");
    }
    report["verdict"] = "colored";
    report["parts"] = coloring.parts.size();
    report["borderline"] = borderline;
    report["certificate"] = Json{{"coloring", coloring_to_json(coloring)}};
    return emit(report, flags, borderline ? kExitBorderline : kExitPositive);
}

// ---------------------------------------------------------------------------
// small system commands

int run_dim(const std::string& path, const CommonFlags& flags) {
    const SystemFile file = load_system(path);
    const OperatorSystem system = file.build(flags.tolerances());
    Json report = base_report("dim", flags);
    attach_input_fields(report, path);
    report["n"] = system.n();
    report["dim"] = system.dim();
    return emit(report, flags, kExitPositive);
}

int run_compress(const std::string& path, const std::string& isometry_path, int rank,
                 const CommonFlags& flags) {
    const ToleranceConfig cfg = flags.tolerances();
    const SystemFile file = load_system(path);
    const OperatorSystem system = file.build(cfg);

    std::optional<Isometry> t;
    if (!isometry_path.empty()) {
        t = load_isometry(isometry_path);
    } else if (rank > 0) {
        t = haar_isometry(system.n(), rank, flags.seed);
    } else {
        throw BadParams("compress needs --isometry or --rank");
    }

    const OperatorSystem compressed = compress(system, *t, cfg);
    SystemFile out_file;
    out_file.n = compressed.n();
    out_file.name = file.name.empty() ? "compressed" : file.name + "-compressed";
    out_file.generators = compressed.basis();

    Json report = base_report("compress", flags);
    attach_input_fields(report, path);
    report["k"] = t->k();
    report["compression_dim"] = compression_dim(system, *t, cfg);
    if (!flags.out.empty()) save_system(out_file, flags.out);
    std::cout << report.dump() << "\n";
    return kExitPositive;
}

int run_check(const std::string& path, const std::string& isometry_path, bool clique,
              const CommonFlags& flags) {
    const ToleranceConfig cfg = flags.tolerances();
    const OperatorSystem system = load_system(path).build(cfg);
    const Isometry t = load_isometry(isometry_path);

    Json report = base_report(clique ? "check-clique" : "check-anticlique", flags);
    attach_input_fields(report, path);
    report["k"] = t.k();
    const RankInfo info = compression_rank_info(system, t, cfg);
    report["compression_dim"] = info.rank;
    report["borderline"] = info.borderline;

    bool positive;
    Json cert = Json{{"isometry", isometry_to_json(t)}};
    if (clique) {
        positive = info.rank == t.k() * t.k();
        report["verdict"] = positive ? "clique" : "not-clique";
    } else {
        const auto anticlique = is_anticlique(system, t, cfg);
        positive = anticlique.has_value();
        report["verdict"] = positive ? "anticlique" : "not-anticlique";
        if (anticlique) {
            Json mus = Json::array();
            for (Complex mu : anticlique->mus) mus.push_back(Json::array({mu.real(), mu.imag()}));
            cert["mus"] = std::move(mus);
        }
    }
    report["certificate"] = std::move(cert);
    if (info.borderline) return emit(report, flags, kExitBorderline);
    return emit(report, flags, positive ? kExitPositive : kExitNegative);
}

int run_find_3clique(const std::string& path, const CommonFlags& flags) {
    const ToleranceConfig cfg = flags.tolerances();
    const OperatorSystem system = load_system(path).build(cfg);
    Json report = base_report("find-3clique", flags);
    attach_input_fields(report, path);

    const auto witness = find_three_clique(system, flags.samples, flags.seed, cfg);
    if (witness) {
        report["verdict"] = "has-triangle";
        report["certificate"] = Json{{"witness", isometry_to_json(*witness)}};
        return emit(report, flags, kExitNegative);
    }
    report["verdict"] = "no-triangle-found";
    report["certificate"] = Json::object();
    return emit(report, flags, kExitPositive);
}

int run_degree(const std::string& path, const std::string& vector_path, const CommonFlags& flags) {
    const ToleranceConfig cfg = flags.tolerances();
    const OperatorSystem system = load_system(path).build(cfg);
    Json report = base_report("degree", flags);
    attach_input_fields(report, path);
    if (!vector_path.empty()) {
        const CVector v = load_vector(vector_path);
        report["mode"] = "vector";
        report["degree"] = degree(system, v, cfg);
        report["certificate"] = Json{{"vector", vector_to_json(v)}};
    } else {
        report["mode"] = "min-estimate";
        report["degree"] = min_degree_estimate(system, flags.samples, flags.seed, cfg);
        report["certificate"] = Json::object();
    }
    return emit(report, flags, kExitPositive);
}

// ---------------------------------------------------------------------------
// verify: replay a stored certificate and compare with the stored verdict

int run_verify(const std::string& report_path, const std::string& system_path,
               const CommonFlags& flags) {
    const Json report = load_json(report_path);
    const ToleranceConfig cfg = flags.tolerances();
    const std::string command = report.at("command").get<std::string>();
    const std::string verdict = report.value("verdict", std::string{});

    std::optional<OperatorSystem> system;
    if (report.contains("input")) {
        if (system_path.empty()) throw BadParams("this report needs --system for verification");
        if (file_digest(system_path) != report.at("input_digest").get<std::string>()) {
            throw ParseError("system file digest does not match the report");
        }
        system = load_system(system_path).build(cfg);
    }

    bool agree = false;
    if (command == "decide" && verdict == "has-triangle") {
        const Isometry witness = isometry_from_json(report.at("certificate").at("witness"));
        agree = witness.k() == 3 && is_clique(*system, witness, cfg);
    } else if (command == "decide" && verdict == "no-triangle-found") {
        const TfVerdict replay = decide_triangle_free(
            *system, report.at("samples").get<int>(), report.at("seed").get<std::uint64_t>(), cfg);
        agree = std::holds_alternative<NoTriangleFound>(replay);
    } else if (command == "decide" && verdict == "stf") {
        const std::string kind = report.at("case").get<std::string>();
        if (kind == "small-n") {
            agree = system->n() == 1;
        } else if (kind == "small-dim") {
            agree = system->dim() <= 2;
        } else if (kind == "sub-bipartite") {
            const CVector v = vector_from_json(report.at("certificate").at("anticlique_vector"));
            agree = system->n() == 2 ||
                    is_anticlique(*system, complement_of_vector(v), cfg).has_value();
        } else if (kind == "except-model") {
            const CMatrix g = matrix_from_json(report.at("certificate").at("basis_change"));
            std::vector<CMatrix> conjugated;
            for (const CMatrix& m : system->basis()) conjugated.push_back(g.adjoint() * m * g);
            agree = mutual_span_residual(conjugated, except_system().basis()) <= 1e-8;
        }
    } else if (command == "decide" && verdict == "not-stf") {
        const Isometry witness = isometry_from_json(report.at("certificate").at("witness"));
        agree = !find_two_anticlique_m3(compress(*system, witness, cfg), cfg).has_value();
    } else if (command == "decide" && verdict == "edge") {
        const EdgeVerdict now = edge_predicates(*system);
        agree = now.edge_free == report.at("certificate").at("edge_free").get<bool>() &&
                now.strongly_edge_free ==
                    report.at("certificate").at("strongly_edge_free").get<bool>();
    } else if (command == "color") {
        const CMatrix a = matrix_from_json(report.at("input_matrix"));
        const Coloring coloring = coloring_from_json(report.at("certificate").at("coloring"));
        const OperatorSystem span = build_system(static_cast<int>(a.rows()), {a}, cfg);
        agree = validate_coloring(span, coloring, cfg);
        if (report.contains("number")) {
            agree = agree && static_cast<int>(coloring.parts.size()) ==
                                 report.at("number").get<int>();
        }
    } else if (command == "check-anticlique" || command == "check-clique") {
        const Isometry t = isometry_from_json(report.at("certificate").at("isometry"));
        const bool positive = command == "check-clique"
                                  ? is_clique(*system, t, cfg)
                                  : is_anticlique(*system, t, cfg).has_value();
        const std::string expected = command == "check-clique" ? "clique" : "anticlique";
        agree = positive == (verdict == expected);
    } else if (command == "find-3clique") {
        if (verdict == "has-triangle") {
            const Isometry witness = isometry_from_json(report.at("certificate").at("witness"));
            agree = is_clique(*system, witness, cfg);
        } else {
            agree = !find_three_clique(*system, report.at("samples").get<int>(),
                                       report.at("seed").get<std::uint64_t>(), cfg)
                         .has_value();
        }
    } else if (command == "degree") {
        if (report.at("mode") == "vector") {
            const CVector v = vector_from_json(report.at("certificate").at("vector"));
            agree = degree(*system, v, cfg) == report.at("degree").get<int>();
        } else {
            agree = min_degree_estimate(*system, report.at("samples").get<int>(),
                                        report.at("seed").get<std::uint64_t>(),
                                        cfg) == report.at("degree").get<int>();
        }
    } else {
        throw BadParams("report command '" + command + "' is not verifiable");
    }

    Json out = base_report("verify", flags);
    out["report"] = report_path;
    out["verified_command"] = command;
    out["verdict"] = agree ? "agree" : "disagree";
    std::cout << out.dump() << "\n";
    return agree ? kExitPositive : kExitNegative;
}

int map_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const Inconsistent*>(&e)) return kExitBorderline;
    return kExitBadInput;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cliques, anticliques and colorings of operator systems in M_n"};
    app.require_subcommand(1);

    CommonFlags flags;

    // gen
    auto* gen = app.add_subcommand("gen", "write a named system to a JSON file");
    std::string gen_target;
    std::vector<int> gen_params;
    MatrixInput gen_matrix;
    gen->add_option("target", gen_target,
                    "diagonal | bipartite | m2ds | skew | except | span-ia | lower-bound")
        ->required();
    gen->add_option("params", gen_params, "integer parameters for the target");
    gen_matrix.attach(gen);
    flags.attach(gen);

    // dim
    auto* dim_cmd = app.add_subcommand("dim", "print the linear dimension of a system");
    std::string dim_path;
    dim_cmd->add_option("system", dim_path)->required();
    flags.attach(dim_cmd);

    // compress
    auto* compress_cmd = app.add_subcommand("compress", "compress a system by an isometry");
    std::string compress_path, compress_isometry;
    int compress_rank = 0;
    compress_cmd->add_option("system", compress_path)->required();
    compress_cmd->add_option("--isometry", compress_isometry, "isometry JSON file");
    compress_cmd->add_option("--rank", compress_rank, "use a Haar-random isometry of this rank");
    flags.attach(compress_cmd);

    // check-anticlique / check-clique
    auto* anticlique_cmd = app.add_subcommand("check-anticlique", "test a rank-k anticlique");
    std::string check_path, check_isometry;
    anticlique_cmd->add_option("system", check_path)->required();
    anticlique_cmd->add_option("--isometry", check_isometry)->required();
    flags.attach(anticlique_cmd);
    auto* clique_cmd = app.add_subcommand("check-clique", "test a rank-k clique");
    clique_cmd->add_option("system", check_path)->required();
    clique_cmd->add_option("--isometry", check_isometry)->required();
    flags.attach(clique_cmd);

    // find-3clique
    auto* find_cmd = app.add_subcommand("find-3clique", "randomized 3-clique search");
    std::string find_path;
    find_cmd->add_option("system", find_path)->required();
    flags.attach(find_cmd);

    // decide
    auto* decide_cmd = app.add_subcommand("decide", "triangle-free / strongly / edge verdicts");
    std::string decide_path, decide_mode;
    decide_cmd->add_option("system", decide_path)->required();
    decide_cmd->add_option("mode", decide_mode, "tf | stf | edge")->required();
    flags.attach(decide_cmd);

    // color
    auto* color_cmd = app.add_subcommand("color", "color a Hermitian matrix");
    std::string color_mode;
    MatrixInput color_matrix;
    color_cmd->add_option("mode", color_mode, "log | m4")->required();
    color_matrix.attach(color_cmd);
    flags.attach(color_cmd);

    // degree
    auto* degree_cmd = app.add_subcommand("degree", "vector degree or sampled minimal degree");
    std::string degree_path, degree_vector;
    degree_cmd->add_option("system", degree_path)->required();
    degree_cmd->add_option("--vector", degree_vector, "vector JSON file");
    flags.attach(degree_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "replay a stored certificate");
    std::string verify_report, verify_system;
    verify_cmd->add_option("report", verify_report)->required();
    verify_cmd->add_option("--system", verify_system, "system file the report was computed from");
    flags.attach(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (gen->parsed()) return run_gen(gen_target, gen_params, gen_matrix, flags);
        if (dim_cmd->parsed()) return run_dim(dim_path, flags);
        if (compress_cmd->parsed())
            return run_compress(compress_path, compress_isometry, compress_rank, flags);
        if (anticlique_cmd->parsed()) return run_check(check_path, check_isometry, false, flags);
        if (clique_cmd->parsed()) return run_check(check_path, check_isometry, true, flags);
        if (find_cmd->parsed()) return run_find_3clique(find_path, flags);
        if (decide_cmd->parsed()) return run_decide(decide_path, decide_mode, flags);
        if (color_cmd->parsed()) return run_color(color_mode, color_matrix, flags);
        if (degree_cmd->parsed()) return run_degree(degree_path, degree_vector, flags);
        if (verify_cmd->parsed()) return run_verify(verify_report, verify_system, flags);
    } catch (const std::exception& e) {
        return map_error(e);
    }
    return kExitBadInput;
}
