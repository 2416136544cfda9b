#pragma once

#include <string>

#include <json.hpp>

#include "ppadforge/birthday.hpp"
#include "ppadforge/ceei.hpp"
#include "ppadforge/fanout.hpp"
#include "ppadforge/games.hpp"
#include "ppadforge/gcircuit.hpp"
#include "ppadforge/partition.hpp"

namespace ppadforge {

using Json = nlohmann::json;

// All parsers reject unknown object keys.

Json circuit_to_json(const GeneralizedCircuit& c);
GeneralizedCircuit circuit_from_json(const Json& j);

Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);

Json bimatrix_to_json(const BimatrixGame& g);
BimatrixGame bimatrix_from_json(const Json& j);

Json polymatrix_to_json(const PolymatrixGame& p);
PolymatrixGame polymatrix_from_json(const Json& j);

Json profile_to_json(const MixedProfile& prof);
MixedProfile profile_from_json(const Json& j);

Json mixed_pair_to_json(const MixedStrategy& x, const MixedStrategy& y);
std::pair<MixedStrategy, MixedStrategy> mixed_pair_from_json(const Json& j);

Json graph_to_json(const BipartiteGraph& g);
BipartiteGraph graph_from_json(const Json& j);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);

Json node_map_to_json(const NormalizationResult& res);

Json problem_to_json(const CourseAllocationProblem& p);
CourseAllocationProblem problem_from_json(const Json& j);

Json solution_to_json(const AllocationSolution& s);
AllocationSolution solution_from_json(const Json& j);

Json incomes_to_json(const IncomeDistribution& d);
IncomeDistribution incomes_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace ppadforge
