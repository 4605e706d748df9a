#include "conekit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conekit/json_io.hpp"
#include "conekit/sparsify.hpp"

namespace conekit {

namespace {

struct CliConfig {
    Tolerances tol;
    std::string input;
    std::string point;
    std::string graph;
    std::string output;
    bool trace = false;
    long long by = 1;
    long long n = 0;
    long long m = 0;
    long long arg_m = 0;
    long long budget = 1000000;
    std::vector<long long> cones;
    std::vector<long long> ranks;
    std::vector<long long> r_table;
    std::string command;
};

std::string slurp(const std::string& path) {
    if (path.empty()) throw std::invalid_argument("missing required input file");
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& path) { return Json::parse(slurp(path)); }

Vector point_vector(const CliConfig& cfg) {
    const PointFile p = point_from_json(parse_json(cfg.point));
    if (!p.x) throw std::invalid_argument("point: expected a vector \"x\"");
    return *p.x;
}

Matrix point_matrix(const CliConfig& cfg) {
    const PointFile p = point_from_json(parse_json(cfg.point));
    if (!p.X) throw std::invalid_argument("point: expected a matrix \"X\"");
    return *p.X;
}

std::vector<Index> to_indices(const std::vector<long long>& values) {
    return std::vector<Index>(values.begin(), values.end());
}

void emit(const CliConfig& cfg, std::ostream& out, const Json& j) {
    const std::string text = dump_json(j);
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + cfg.output);
    f << text;
}

Json sparsify_output(const CliConfig& cfg, const SparsifyResult& r) {
    if (!cfg.trace) return to_json(r.solution);
    Json j = Json::object();
    j["schema"] = kSchemaVersion;
    j["kind"] = "sparsify_result";
    j["solution"] = to_json(r.solution);
    j["trace"] = to_json(r.trace);
    return j;
}

Json rank_reduce_output(const CliConfig& cfg, const RankReductionResult& r,
                        const HyperbolicSpectrum& spectrum) {
    Json j = Json::object();
    j["schema"] = kSchemaVersion;
    j["kind"] = "rank_reduction";
    j["solution"] = to_json(r.solution);
    j["spectrum"] = to_json(spectrum);
    if (cfg.trace) j["trace"] = to_json(r.trace);
    return j;
}

int dispatch(const CliConfig& cfg, std::ostream& out) {
    const std::string& cmd = cfg.command;

    if (cmd == "solve-lp") {
        const LpProblem p = lp_from_json(parse_json(cfg.input));
        const LpSolveResult r = solve_lp(p, cfg.tol);
        if (r.status != LpStatus::Optimal) {
            Json j = Json::object();
            j["schema"] = kSchemaVersion;
            j["kind"] = "status";
            j["status"] = r.status == LpStatus::Infeasible ? "infeasible" : "unbounded";
            emit(cfg, out, j);
            return 1;
        }
        emit(cfg, out, to_json(r.solution));
        return 0;
    }
    if (cmd == "sparsify.lp") {
        const LpProblem p = lp_from_json(parse_json(cfg.input));
        const Solution y = check_feasible(p, point_vector(cfg));
        const SparsifyResult r =
            p.nonneg ? sparsify_nonneg(p, y, cfg.tol) : sparsify_free(p, y, cfg.tol);
        emit(cfg, out, sparsify_output(cfg, r));
        return 0;
    }
    if (cmd == "sparsify.qcqp") {
        const QcqpProblem p = qcqp_from_json(parse_json(cfg.input));
        const Solution y = check_feasible(p, point_vector(cfg));
        emit(cfg, out, sparsify_output(cfg, sparsify_qcqp(p, y, cfg.tol)));
        return 0;
    }
    if (cmd == "sparsify.socp") {
        const SocpProblem p = socp_from_json(parse_json(cfg.input));
        const Solution y = check_feasible(p, point_vector(cfg));
        emit(cfg, out, sparsify_output(cfg, sparsify_socp(p, y, cfg.tol)));
        return 0;
    }
    if (cmd == "rank-reduce.socp") {
        const SocpProblem p = socp_from_json(parse_json(cfg.input));
        const Solution y = check_feasible(p, point_vector(cfg));
        const RankReductionResult r = socp_rank_reduce(p, y, cfg.tol);
        const HyperbolicSpectrum spec = socp_spectrum(p, r.solution.vec(), cfg.tol);
        emit(cfg, out, rank_reduce_output(cfg, r, spec));
        return 0;
    }
    if (cmd == "rank-reduce.qcqp") {
        const QcqpProblem p = qcqp_from_json(parse_json(cfg.input));
        const Solution y = check_feasible(p, point_vector(cfg));
        const RankReductionResult r = qcqp_rank_reduce(p, y, cfg.tol);
        const HyperbolicSpectrum spec = qcqp_rank(p, r.solution.vec(), cfg.tol);
        emit(cfg, out, rank_reduce_output(cfg, r, spec));
        return 0;
    }
    if (cmd == "rank.lp") {
        emit(cfg, out, to_json(lp_rank(point_vector(cfg), cfg.tol)));
        return 0;
    }
    if (cmd == "rank.sdp") {
        emit(cfg, out, to_json(sdp_rank(point_matrix(cfg), cfg.tol)));
        return 0;
    }
    if (cmd == "rank.socp") {
        const SocpProblem p = socp_from_json(parse_json(cfg.input));
        emit(cfg, out, to_json(socp_spectrum(p, point_vector(cfg), cfg.tol)));
        return 0;
    }
    if (cmd == "rank.qcqp") {
        const QcqpProblem p = qcqp_from_json(parse_json(cfg.input));
        emit(cfg, out, to_json(qcqp_rank(p, point_vector(cfg), cfg.tol)));
        return 0;
    }
    if (cmd == "reduce.maxcut-sdp") {
        emit(cfg, out, to_json(maxcut_to_rank_sdp(read_graph(slurp(cfg.graph)))));
        return 0;
    }
    if (cmd == "reduce.maxcut-socp") {
        emit(cfg, out, to_json(maxcut_to_rank_socp(read_graph(slurp(cfg.graph)))));
        return 0;
    }
    if (cmd == "reduce.clique-sdp") {
        emit(cfg, out, to_json(clique_to_rank_sdp(read_graph(slurp(cfg.graph)))));
        return 0;
    }
    if (cmd == "reduce.stability-sdp") {
        emit(cfg, out, to_json(stability_to_rank_sdp(read_graph(slurp(cfg.graph)))));
        return 0;
    }
    if (cmd == "increment.sdp") {
        const RankedConicProgram p = ranked_from_json(parse_json(cfg.input));
        emit(cfg, out, to_json(sdp_rank_increment(p, cfg.by)));
        return 0;
    }
    if (cmd == "increment.socp") {
        const RankedConicProgram p = ranked_from_json(parse_json(cfg.input));
        emit(cfg, out, to_json(socp_rank_increment(p, cfg.by)));
        return 0;
    }
    if (cmd == "increment.qcqp") {
        const RankedConicProgram p = ranked_from_json(parse_json(cfg.input));
        emit(cfg, out, to_json(qcqp_rank_increment(p, cfg.by)));
        return 0;
    }
    if (cmd == "gen.tight-socp") {
        emit(cfg, out,
             to_json(tight_socp(cfg.n, cfg.m, static_cast<Index>(cfg.cones.size()),
                                to_indices(cfg.cones))));
        return 0;
    }
    if (cmd == "gen.tight-qcqp") {
        if (cfg.ranks.empty())
            throw std::invalid_argument("gen tight-qcqp: --ranks r_0..r_k is required");
        emit(cfg, out,
             to_json(tight_qcqp(cfg.n, cfg.m, static_cast<Index>(cfg.ranks.size()) - 1,
                                to_indices(cfg.ranks))));
        return 0;
    }
    if (cmd == "maxcut-brute") {
        emit(cfg, out, to_json(maxcut_brute(read_graph(slurp(cfg.graph)))));
        return 0;
    }
    if (cmd == "phi") {
        Json j = Json::object();
        j["schema"] = kSchemaVersion;
        j["kind"] = "phi";
        j["m"] = cfg.arg_m;
        j["value"] = phi(cfg.arg_m, cfg.r_table);
        emit(cfg, out, j);
        return 0;
    }
    if (cmd == "find-m") {
        Json j = Json::object();
        j["schema"] = kSchemaVersion;
        j["kind"] = "m_search";
        j["n"] = cfg.n;
        j["m"] = find_m(cfg.n, cfg.r_table, cfg.budget);
        emit(cfg, out, j);
        return 0;
    }
    throw std::invalid_argument("no command selected");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"conic-optimization post-processing and reduction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--feas-tol", cfg.tol.feas_tol, "feasibility tolerance");
    app.add_option("--zero-tol", cfg.tol.zero_tol, "zero threshold");
    app.add_option("--rank-tol", cfg.tol.rank_tol_rel, "relative rank threshold");
    app.add_option("--output", cfg.output, "output file ('-' or empty for stdout)");
    app.add_flag("--trace", cfg.trace, "include the algorithm trace in the output");

    const auto named = [](CLI::App* parent, const std::string& name,
                          const std::string& desc) {
        CLI::App* sub = parent->add_subcommand(name, desc);
        sub->fallthrough();
        return sub;
    };
    const auto leaf = [&cfg, &named](CLI::App* parent, const std::string& name,
                                     const std::string& command, const std::string& desc) {
        CLI::App* sub = named(parent, name, desc);
        sub->callback([&cfg, command] { cfg.command = command; });
        return sub;
    };
    CLI::App* solve = leaf(&app, "solve-lp", "solve-lp", "solve an LP instance");
    solve->add_option("--input", cfg.input, "LP instance file")->required();

    CLI::App* sparsify = named(&app, "sparsify", "sparsify an optimal solution");
    sparsify->require_subcommand(1);
    for (const char* kind : {"lp", "qcqp", "socp"}) {
        CLI::App* sub = leaf(sparsify, kind, std::string("sparsify.") + kind,
                             "sparsify an optimal solution");
        sub->add_option("--input", cfg.input, "instance file")->required();
        sub->add_option("--point", cfg.point, "point file")->required();
    }

    CLI::App* reduce_rank = named(&app, "rank-reduce", "reduce the hyperbolic rank");
    reduce_rank->require_subcommand(1);
    for (const char* kind : {"socp", "qcqp"}) {
        CLI::App* sub = leaf(reduce_rank, kind, std::string("rank-reduce.") + kind,
                             "reduce the hyperbolic rank of an optimal solution");
        sub->add_option("--input", cfg.input, "instance file")->required();
        sub->add_option("--point", cfg.point, "point file")->required();
    }

    CLI::App* rank = named(&app, "rank", "evaluate the hyperbolic spectrum");
    rank->require_subcommand(1);
    for (const char* kind : {"lp", "sdp"}) {
        CLI::App* sub = leaf(rank, kind, std::string("rank.") + kind,
                             "spectrum of a point");
        sub->add_option("--point", cfg.point, "point file")->required();
    }
    for (const char* kind : {"socp", "qcqp"}) {
        CLI::App* sub = leaf(rank, kind, std::string("rank.") + kind,
                             "spectrum of a feasible point");
        sub->add_option("--input", cfg.input, "instance file")->required();
        sub->add_option("--point", cfg.point, "point file")->required();
    }

    CLI::App* reduce = named(&app, "reduce", "compile a graph problem");
    reduce->require_subcommand(1);
    for (const char* kind : {"maxcut-sdp", "maxcut-socp", "clique-sdp", "stability-sdp"}) {
        CLI::App* sub = leaf(reduce, kind, std::string("reduce.") + kind,
                             "graph to rank-constrained program");
        sub->add_option("--graph", cfg.graph, "graph file (JSON or DIMACS)")->required();
    }

    CLI::App* increment = named(&app, "increment", "raise the rank bound");
    increment->require_subcommand(1);
    for (const char* kind : {"sdp", "socp", "qcqp"}) {
        CLI::App* sub = leaf(increment, kind, std::string("increment.") + kind,
                             "rank-increment embedding");
        sub->add_option("--input", cfg.input, "ranked program file")->required();
        sub->add_option("--by", cfg.by, "target rank (sdp) or gadget count")->required();
    }

    CLI::App* gen = named(&app, "gen", "emit a tight instance");
    gen->require_subcommand(1);
    {
        CLI::App* sub = leaf(gen, "tight-socp", "gen.tight-socp", "tight SOCP instance");
        sub->add_option("--n", cfg.n, "dimension")->required();
        sub->add_option("--m", cfg.m, "linear row count")->required();
        sub->add_option("--cones", cfg.cones, "cone sizes m_1..m_k")
            ->required()
            ->delimiter(',');
    }
    {
        CLI::App* sub = leaf(gen, "tight-qcqp", "gen.tight-qcqp", "tight QCQP instance");
        sub->add_option("--n", cfg.n, "dimension")->required();
        sub->add_option("--m", cfg.m, "linear row count")->required();
        sub->add_option("--ranks", cfg.ranks, "ranks r_0..r_k")
            ->required()
            ->delimiter(',');
    }

    CLI::App* brute = leaf(&app, "maxcut-brute", "maxcut-brute", "exhaustive max-cut");
    brute->add_option("--graph", cfg.graph, "graph file (JSON or DIMACS)")->required();

    CLI::App* phi_cmd = leaf(&app, "phi", "phi", "dimension-from-constraint-count map");
    phi_cmd->add_option("--m", cfg.arg_m, "argument m")->required();
    phi_cmd->add_option("--r-table", cfg.r_table, "rank table r(1), r(2), ...")
        ->required()
        ->delimiter(',');

    CLI::App* findm = leaf(&app, "find-m", "find-m", "smallest m with phi(m) = n");
    findm->add_option("--n", cfg.n, "target dimension")->required();
    findm->add_option("--r-table", cfg.r_table, "rank table r(1), r(2), ...")
        ->required()
        ->delimiter(',');
    findm->add_option("--budget", cfg.budget, "scan budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;  // usage problems exit with 2, --help with 0
    }

    try {
        cfg.tol.validate();
        return dispatch(cfg, out);
    } catch (const InfeasiblePointError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotOptimalInputError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoTighteningDirection& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const KernelConditionViolated& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotPsdError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotSymmetricError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace conekit
