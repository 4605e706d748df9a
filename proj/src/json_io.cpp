#include "conekit/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

namespace conekit {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_object(const Json& j, const char* what,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) fail(std::string(what) + ": expected a JSON object");
    for (const char* key : required)
        if (!j.contains(key))
            fail(std::string(what) + ": missing field \"" + key + "\"");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const auto matches = [&key](const char* k) { return key == k; };
        if (!std::any_of(required.begin(), required.end(), matches) &&
            !std::any_of(optional.begin(), optional.end(), matches))
            fail(std::string(what) + ": unknown field \"" + key + "\"");
    }
}

void check_header(const Json& j, const char* what, const char* kind) {
    const Json& schema = j.at("schema");
    if (!schema.is_number_integer() || schema.get<long long>() != kSchemaVersion)
        fail(std::string(what) + ": unsupported schema version");
    const Json& k = j.at("kind");
    if (!k.is_string() || k.get<std::string>() != kind)
        fail(std::string(what) + ": expected kind \"" + kind + "\"");
}

double number_from(const Json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + ": expected a number");
    return j.get<double>();
}

long long integer_from(const Json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + ": expected an integer");
    return j.get<long long>();
}

Json header(const char* kind) {
    Json j = Json::object();
    j["schema"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Matrix matrix_from_json(const Json& j, const char* what, Index expect_cols) {
    if (!j.is_array()) fail(std::string(what) + ": expected an array of rows");
    const Index rows = static_cast<Index>(j.size());
    if (rows == 0) return Matrix(0, std::max<Index>(expect_cols, 0));
    if (!j[0].is_array()) fail(std::string(what) + ": expected an array of rows");
    const Index cols = static_cast<Index>(j[0].size());
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            fail(std::string(what) + ": ragged matrix rows");
        for (Index c = 0; c < cols; ++c)
            m(r, c) = number_from(row[static_cast<size_t>(c)], what);
    }
    return m;
}

Vector vector_from_json(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + ": expected an array of numbers");
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i)
        v[i] = number_from(j[static_cast<size_t>(i)], what);
    return v;
}

Json to_json(const LpProblem& p) {
    Json j = header("lp");
    j["A"] = to_json(p.A);
    j["b"] = to_json(p.b);
    j["c"] = to_json(p.c);
    j["nonneg"] = p.nonneg;
    return j;
}

LpProblem lp_from_json(const Json& j) {
    check_object(j, "lp", {"schema", "kind", "A", "b", "c", "nonneg"});
    check_header(j, "lp", "lp");
    LpProblem p;
    p.c = vector_from_json(j.at("c"), "lp.c");
    p.A = matrix_from_json(j.at("A"), "lp.A", p.c.size());
    p.b = vector_from_json(j.at("b"), "lp.b");
    if (!j.at("nonneg").is_boolean()) fail("lp.nonneg: expected a boolean");
    p.nonneg = j.at("nonneg").get<bool>();
    p.validate();
    return p;
}

Json to_json(const QcqpProblem& p) {
    Json j = header("qcqp");
    Json qs = Json::array();
    for (const Matrix& Q : p.Q) qs.push_back(to_json(Q));
    j["Q"] = std::move(qs);
    Json cs = Json::array();
    for (const Vector& c : p.c) cs.push_back(to_json(c));
    j["c"] = std::move(cs);
    Json ds = Json::array();
    for (double d : p.d) ds.push_back(d);
    j["d"] = std::move(ds);
    j["A"] = to_json(p.A);
    j["b"] = to_json(p.b);
    return j;
}

QcqpProblem qcqp_from_json(const Json& j) {
    check_object(j, "qcqp", {"schema", "kind", "Q", "c", "d", "A", "b"});
    check_header(j, "qcqp", "qcqp");
    QcqpProblem p;
    const Json& qs = j.at("Q");
    if (!qs.is_array() || qs.empty()) fail("qcqp.Q: expected Q_0..Q_k");
    for (const Json& q : qs) p.Q.push_back(matrix_from_json(q, "qcqp.Q"));
    const Json& cs = j.at("c");
    if (!cs.is_array()) fail("qcqp.c: expected c_0..c_k");
    for (const Json& c : cs) p.c.push_back(vector_from_json(c, "qcqp.c"));
    const Json& ds = j.at("d");
    if (!ds.is_array()) fail("qcqp.d: expected d_1..d_k");
    for (const Json& d : ds) p.d.push_back(number_from(d, "qcqp.d"));
    p.A = matrix_from_json(j.at("A"), "qcqp.A", p.Q[0].cols());
    p.b = vector_from_json(j.at("b"), "qcqp.b");
    p.validate();
    return p;
}

Json to_json(const SocpProblem& p) {
    Json j = header("socp");
    Json cones = Json::array();
    for (const SocpCone& cone : p.cones) {
        Json c = Json::object();
        c["A"] = to_json(cone.A);
        c["b"] = to_json(cone.b);
        c["c"] = to_json(cone.c);
        c["d"] = cone.d;
        cones.push_back(std::move(c));
    }
    j["cones"] = std::move(cones);
    j["F"] = to_json(p.F);
    j["g"] = to_json(p.g);
    j["c"] = to_json(p.c);
    return j;
}

SocpProblem socp_from_json(const Json& j) {
    check_object(j, "socp", {"schema", "kind", "cones", "F", "g", "c"});
    check_header(j, "socp", "socp");
    SocpProblem p;
    p.c = vector_from_json(j.at("c"), "socp.c");
    const Json& cones = j.at("cones");
    if (!cones.is_array()) fail("socp.cones: expected an array");
    for (const Json& cj : cones) {
        check_object(cj, "socp.cone", {"A", "b", "c", "d"});
        SocpCone cone;
        cone.A = matrix_from_json(cj.at("A"), "socp.cone.A", p.c.size());
        cone.b = vector_from_json(cj.at("b"), "socp.cone.b");
        cone.c = vector_from_json(cj.at("c"), "socp.cone.c");
        cone.d = number_from(cj.at("d"), "socp.cone.d");
        p.cones.push_back(std::move(cone));
    }
    p.F = matrix_from_json(j.at("F"), "socp.F", p.c.size());
    p.g = vector_from_json(j.at("g"), "socp.g");
    p.validate();
    return p;
}

Json to_json(const SdpProblem& p) {
    Json j = header("sdp");
    j["C"] = to_json(p.C);
    Json cons = Json::array();
    for (const SdpConstraint& con : p.constraints) {
        Json c = Json::object();
        c["A"] = to_json(con.A);
        c["b"] = con.b;
        cons.push_back(std::move(c));
    }
    j["constraints"] = std::move(cons);
    Json ineqs = Json::array();
    for (const SdpConstraint& con : p.ineq_constraints) {
        Json c = Json::object();
        c["G"] = to_json(con.A);
        c["h"] = con.b;
        ineqs.push_back(std::move(c));
    }
    j["ineq_constraints"] = std::move(ineqs);
    if (p.rank_bound) j["rank_bound"] = *p.rank_bound;
    return j;
}

SdpProblem sdp_from_json(const Json& j) {
    check_object(j, "sdp", {"schema", "kind", "C", "constraints"},
                 {"ineq_constraints", "rank_bound"});
    check_header(j, "sdp", "sdp");
    SdpProblem p;
    p.C = matrix_from_json(j.at("C"), "sdp.C");
    const Json& cons = j.at("constraints");
    if (!cons.is_array()) fail("sdp.constraints: expected an array");
    for (const Json& cj : cons) {
        check_object(cj, "sdp.constraint", {"A", "b"});
        p.constraints.push_back({matrix_from_json(cj.at("A"), "sdp.constraint.A"),
                                 number_from(cj.at("b"), "sdp.constraint.b")});
    }
    if (j.contains("ineq_constraints")) {
        const Json& ineqs = j.at("ineq_constraints");
        if (!ineqs.is_array()) fail("sdp.ineq_constraints: expected an array");
        for (const Json& cj : ineqs) {
            check_object(cj, "sdp.ineq_constraint", {"G", "h"});
            p.ineq_constraints.push_back(
                {matrix_from_json(cj.at("G"), "sdp.ineq_constraint.G"),
                 number_from(cj.at("h"), "sdp.ineq_constraint.h")});
        }
    }
    if (j.contains("rank_bound"))
        p.rank_bound = integer_from(j.at("rank_bound"), "sdp.rank_bound");
    p.validate();
    return p;
}

Json to_json(const Graph& g) {
    Json j = header("graph");
    j["n"] = g.n;
    Json edges = Json::array();
    for (Index i = 0; i < g.n; ++i) {
        for (Index k = i + 1; k < g.n; ++k) {
            if (g.weights(i, k) != 0.0) {
                Json e = Json::array();
                e.push_back(i);
                e.push_back(k);
                e.push_back(g.weights(i, k));
                edges.push_back(std::move(e));
            }
        }
    }
    j["edges"] = std::move(edges);
    return j;
}

Graph graph_from_json(const Json& j) {
    check_object(j, "graph", {"schema", "kind", "n", "edges"});
    check_header(j, "graph", "graph");
    Graph g;
    g.n = static_cast<Index>(integer_from(j.at("n"), "graph.n"));
    if (g.n < 0) fail("graph.n: must be nonnegative");
    g.weights = Matrix::Zero(g.n, g.n);
    const Json& edges = j.at("edges");
    if (!edges.is_array()) fail("graph.edges: expected an array of [i, j, w]");
    for (const Json& e : edges) {
        if (!e.is_array() || e.size() != 3)
            fail("graph.edges: expected [i, j, w] triples");
        const Index a = static_cast<Index>(integer_from(e[0], "graph.edge"));
        const Index b = static_cast<Index>(integer_from(e[1], "graph.edge"));
        const double w = number_from(e[2], "graph.edge");
        if (a < 0 || b < 0 || a >= g.n || b >= g.n)
            fail("graph.edges: vertex out of range (vertices are 0-indexed)");
        if (a == b) fail("graph.edges: self-loops are not allowed");
        if (g.weights(a, b) != 0.0) fail("graph.edges: duplicate edge");
        g.weights(a, b) = w;
        g.weights(b, a) = w;
    }
    g.validate();
    return g;
}

Graph graph_from_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Index declared_n = 0;
    bool saw_header = false;
    std::vector<std::tuple<Index, Index, double>> edges;
    Index max_vertex = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") continue;
        if (head == "p") {
            if (saw_header) fail("dimacs: repeated problem line");
            saw_header = true;
            std::string fmt;
            long long pn = 0;
            if (!(ls >> fmt >> pn) || pn < 0) fail("dimacs: malformed problem line");
            declared_n = static_cast<Index>(pn);
            continue;
        }
        if (head == "e") {
            long long a = 0, b = 0;
            if (!(ls >> a >> b)) fail("dimacs: malformed edge line");
            double w = 1.0;
            ls >> w;
            if (a < 1 || b < 1) fail("dimacs: vertices are 1-indexed");
            if (a == b) fail("dimacs: self-loops are not allowed");
            edges.emplace_back(static_cast<Index>(a - 1), static_cast<Index>(b - 1), w);
            max_vertex = std::max({max_vertex, static_cast<Index>(a), static_cast<Index>(b)});
            continue;
        }
        fail("dimacs: unrecognized line \"" + line + "\"");
    }
    Graph g;
    g.n = std::max(declared_n, max_vertex);
    g.weights = Matrix::Zero(g.n, g.n);
    for (const auto& [a, b, w] : edges) {
        if (g.weights(a, b) != 0.0) fail("dimacs: duplicate edge");
        g.weights(a, b) = w;
        g.weights(b, a) = w;
    }
    g.validate();
    return g;
}

Graph read_graph(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return graph_from_json(Json::parse(text));
        break;
    }
    return graph_from_dimacs(text);
}

PointFile point_from_json(const Json& j) {
    check_object(j, "point", {"schema", "kind"}, {"x", "X"});
    check_header(j, "point", "point");
    PointFile p;
    if (j.contains("x")) p.x = vector_from_json(j.at("x"), "point.x");
    if (j.contains("X")) p.X = matrix_from_json(j.at("X"), "point.X");
    if (p.x.has_value() == p.X.has_value())
        fail("point: provide exactly one of \"x\" or \"X\"");
    return p;
}

Json to_json_point(const Vector& x) {
    Json j = header("point");
    j["x"] = to_json(x);
    return j;
}

Json to_json(const Solution& s) {
    Json j = header("solution");
    if (std::holds_alternative<Vector>(s.point))
        j["x"] = to_json(s.vec());
    else
        j["X"] = to_json(s.mat());
    j["objective"] = s.objective;
    j["max_residual"] = s.max_residual;
    return j;
}

Json to_json(const HyperbolicSpectrum& s) {
    Json j = header("spectrum");
    Json eigs = Json::array();
    for (double e : s.eigenvalues) eigs.push_back(e);
    j["eigenvalues"] = std::move(eigs);
    j["rank"] = s.rank;
    j["tight_count"] = s.tight_count;
    j["doubly_zero_count"] = s.doubly_zero_count;
    return j;
}

Json to_json(const SparsifyTrace& t) {
    Json j = Json::object();
    j["initial_card"] = t.initial_card;
    j["final_card"] = t.final_card;
    Json pivots = Json::array();
    for (const SparsifyPivot& p : t.pivots) {
        Json pj = Json::object();
        pj["direction"] = to_json(p.direction);
        pj["step"] = p.step;
        pj["zeroed"] = p.zeroed;
        pivots.push_back(std::move(pj));
    }
    j["pivots"] = std::move(pivots);
    return j;
}

Json to_json(const RankReductionTrace& t) {
    Json j = Json::object();
    j["initial_rank"] = t.initial_rank;
    j["final_rank"] = t.final_rank;
    Json steps = Json::array();
    for (const RankReductionStep& s : t.steps) {
        Json sj = Json::object();
        sj["direction"] = to_json(s.direction);
        sj["cone"] = s.cone;
        sj["step"] = s.step;
        Json ts = Json::array();
        for (long long u : s.tight_set) ts.push_back(u);
        sj["tight_set"] = std::move(ts);
        steps.push_back(std::move(sj));
    }
    j["steps"] = std::move(steps);
    return j;
}

Json to_json(const CutResult& c) {
    Json j = header("cut");
    j["value"] = c.value;
    Json signs = Json::array();
    for (int s : c.signs) signs.push_back(s);
    j["signs"] = std::move(signs);
    return j;
}

Json to_json(const BisectionResult& b) {
    Json j = header("cut_value");
    j["value"] = b.value;
    j["oracle_calls"] = b.oracle_calls;
    return j;
}

Json to_json(const Embedding& e) {
    Json j = Json::object();
    j["nodes"] = e.nodes;
    j["x_offset"] = e.x_offset;
    j["xmat_offset"] = e.xmat_offset;
    j["t_index"] = e.t_index;
    j["leading"] = e.leading;
    j["appended"] = e.appended;
    return j;
}

namespace {

Embedding embedding_from_json(const Json& j) {
    check_object(j, "embedding",
                 {"nodes", "x_offset", "xmat_offset", "t_index", "leading", "appended"});
    Embedding e;
    e.nodes = static_cast<Index>(integer_from(j.at("nodes"), "embedding.nodes"));
    e.x_offset = static_cast<Index>(integer_from(j.at("x_offset"), "embedding.x_offset"));
    e.xmat_offset =
        static_cast<Index>(integer_from(j.at("xmat_offset"), "embedding.xmat_offset"));
    e.t_index = static_cast<Index>(integer_from(j.at("t_index"), "embedding.t_index"));
    e.leading = static_cast<Index>(integer_from(j.at("leading"), "embedding.leading"));
    e.appended = static_cast<Index>(integer_from(j.at("appended"), "embedding.appended"));
    return e;
}

}  // namespace

Json to_json(const RankedConicProgram& p) {
    Json j = header("ranked_program");
    std::visit([&j](const auto& prog) { j["program"] = to_json(prog); }, p.program);
    j["rank_bound"] = p.rank_bound;
    j["embedding"] = to_json(p.embedding);
    return j;
}

RankedConicProgram ranked_from_json(const Json& j) {
    check_object(j, "ranked_program",
                 {"schema", "kind", "program", "rank_bound", "embedding"});
    check_header(j, "ranked_program", "ranked_program");
    RankedConicProgram p;
    const Json& prog = j.at("program");
    if (!prog.is_object() || !prog.contains("kind") || !prog.at("kind").is_string())
        fail("ranked_program.program: expected an instance object");
    const std::string kind = prog.at("kind").get<std::string>();
    if (kind == "sdp")
        p.program = sdp_from_json(prog);
    else if (kind == "socp")
        p.program = socp_from_json(prog);
    else if (kind == "qcqp")
        p.program = qcqp_from_json(prog);
    else
        fail("ranked_program.program: unsupported kind \"" + kind + "\"");
    p.rank_bound = integer_from(j.at("rank_bound"), "ranked_program.rank_bound");
    if (p.rank_bound < 1) fail("ranked_program.rank_bound: must be >= 1");
    p.embedding = embedding_from_json(j.at("embedding"));
    return p;
}

Json to_json(const TightInstance& t) {
    Json j = header("tight_instance");
    std::visit([&j](const auto& prob) { j["problem"] = to_json(prob); }, t.problem);
    j["x_star"] = to_json(t.x_star);
    j["optimal_value"] = t.optimal_value;
    j["cardinality_bound"] = t.cardinality_bound;
    return j;
}

}  // namespace conekit
