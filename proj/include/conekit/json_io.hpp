#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "conekit/generators.hpp"
#include "conekit/hyperbolic_rank.hpp"
#include "conekit/lp_toolkit.hpp"
#include "conekit/problems.hpp"
#include "conekit/rank_reduction.hpp"
#include "conekit/reductions.hpp"

namespace conekit {

using Json = nlohmann::ordered_json;

// Every file carries {"schema": 1, "kind": ...}; unknown fields are errors.
inline constexpr int kSchemaVersion = 1;

std::string dump_json(const Json& j);  // dump(2) + trailing newline

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Matrix matrix_from_json(const Json& j, const char* what, Index expect_cols = -1);
Vector vector_from_json(const Json& j, const char* what);

Json to_json(const LpProblem& p);
LpProblem lp_from_json(const Json& j);
Json to_json(const QcqpProblem& p);
QcqpProblem qcqp_from_json(const Json& j);
Json to_json(const SocpProblem& p);
SocpProblem socp_from_json(const Json& j);
Json to_json(const SdpProblem& p);
SdpProblem sdp_from_json(const Json& j);

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);
Graph graph_from_dimacs(const std::string& text);
Graph read_graph(const std::string& text);  // sniffs JSON vs DIMACS

// A point file holds exactly one of a vector "x" or a symmetric matrix "X".
struct PointFile {
    std::optional<Vector> x;
    std::optional<Matrix> X;
};
PointFile point_from_json(const Json& j);
Json to_json_point(const Vector& x);

Json to_json(const Solution& s);
Json to_json(const HyperbolicSpectrum& s);
Json to_json(const SparsifyTrace& t);
Json to_json(const RankReductionTrace& t);
Json to_json(const CutResult& c);
Json to_json(const BisectionResult& b);
Json to_json(const Embedding& e);
Json to_json(const RankedConicProgram& p);
RankedConicProgram ranked_from_json(const Json& j);
Json to_json(const TightInstance& t);

}  // namespace conekit
