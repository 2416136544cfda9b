#include "ppadforge/jsonio.hpp"

#include <fstream>
#include <set>

namespace ppadforge {

namespace {

void expect_keys(const Json& obj, const char* what,
                 std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object())
    throw InputError(std::string(what) + ": expected a JSON object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    if (!obj.contains(k))
      throw InputError(std::string(what) + ": missing key \"" + k + "\"");
    allowed.insert(k);
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k))
      throw InputError(std::string(what) + ": unknown key \"" + k + "\"");
}

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(std::string(what) + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw InputError(std::string(what) + ": expected a nonempty matrix");
  Matrix m;
  m.rows = static_cast<int>(j.size());
  for (int i = 0; i < m.rows; ++i) {
    auto row = number_list(j[i], what);
    if (i == 0)
      m.cols = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != m.cols)
      throw InputError(std::string(what) + ": ragged matrix");
    m.a.insert(m.a.end(), row.begin(), row.end());
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json circuit_to_json(const GeneralizedCircuit& c) {
  Json j;
  j["nodes"] = c.nodes;
  Json gates = Json::array();
  for (const Gate& g : c.gates) {
    Json jg;
    jg["type"] = gate_type_name(g.kind);
    if (g.zeta) jg["zeta"] = *g.zeta;
    jg["in"] = g.inputs;
    jg["out"] = g.output;
    gates.push_back(std::move(jg));
  }
  j["gates"] = std::move(gates);
  return j;
}

GeneralizedCircuit circuit_from_json(const Json& j) {
  expect_keys(j, "circuit", {"nodes", "gates"});
  GeneralizedCircuit c;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw InputError("circuit: node ids must be strings");
    c.nodes.push_back(n.get<std::string>());
  }
  for (const auto& jg : j["gates"]) {
    expect_keys(jg, "gate", {"type", "in", "out"}, {"zeta"});
    Gate g;
    auto t = gate_type_from_name(jg["type"].get<std::string>());
    if (!t)
      throw InputError("circuit: unknown gate type " +
                       jg["type"].get<std::string>());
    g.kind = *t;
    if (jg.contains("zeta")) g.zeta = jg["zeta"].get<double>();
    for (const auto& in : jg["in"]) g.inputs.push_back(in.get<std::string>());
    g.output = jg["out"].get<std::string>();
    c.gates.push_back(std::move(g));
  }
  return c;
}

Json assignment_to_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [k, v] : a) j[k] = v;
  return j;
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("assignment: expected a JSON object");
  Assignment a;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw InputError("assignment: values must be numbers");
    a[k] = v.get<double>();
  }
  return a;
}

Json bimatrix_to_json(const BimatrixGame& g) {
  Json j;
  j["R"] = matrix_to_json(g.R);
  j["C"] = matrix_to_json(g.C);
  return j;
}

BimatrixGame bimatrix_from_json(const Json& j) {
  expect_keys(j, "bimatrix", {"R", "C"});
  BimatrixGame g;
  g.R = matrix_from_json(j["R"], "R");
  g.C = matrix_from_json(j["C"], "C");
  check_game(g);
  return g;
}

Json polymatrix_to_json(const PolymatrixGame& p) {
  Json j;
  j["players"] = p.players;
  Json edges = Json::array();
  for (const EdgeGame& e : p.edges) {
    Json je;
    je["u"] = e.u;
    je["v"] = e.v;
    je["Au"] = Json::array({Json::array({e.au[0][0], e.au[0][1]}),
                            Json::array({e.au[1][0], e.au[1][1]})});
    je["Av"] = Json::array({Json::array({e.av[0][0], e.av[0][1]}),
                            Json::array({e.av[1][0], e.av[1][1]})});
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  if (p.bipartition)
    j["bipartition"] =
        Json::array({p.bipartition->first, p.bipartition->second});
  return j;
}

PolymatrixGame polymatrix_from_json(const Json& j) {
  expect_keys(j, "polymatrix", {"players", "edges"}, {"bipartition"});
  PolymatrixGame p;
  p.players = j["players"].get<int>();
  for (const auto& je : j["edges"]) {
    expect_keys(je, "edge", {"u", "v", "Au", "Av"});
    EdgeGame e;
    e.u = je["u"].get<int>();
    e.v = je["v"].get<int>();
    Matrix au = matrix_from_json(je["Au"], "Au");
    Matrix av = matrix_from_json(je["Av"], "Av");
    if (au.rows != 2 || au.cols != 2 || av.rows != 2 || av.cols != 2)
      throw InputError("polymatrix: edge tables must be 2x2");
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        e.au[a][b] = au.at(a, b);
        e.av[a][b] = av.at(a, b);
      }
    p.edges.push_back(e);
  }
  if (j.contains("bipartition")) {
    if (!j["bipartition"].is_array() || j["bipartition"].size() != 2)
      throw InputError("polymatrix: bipartition must hold two lists");
    std::vector<int> u = j["bipartition"][0].get<std::vector<int>>();
    std::vector<int> v = j["bipartition"][1].get<std::vector<int>>();
    p.bipartition = {std::move(u), std::move(v)};
  }
  return p;
}

Json profile_to_json(const MixedProfile& prof) {
  Json j;
  j["p"] = prof.p;
  return j;
}

MixedProfile profile_from_json(const Json& j) {
  expect_keys(j, "profile", {"p"});
  MixedProfile prof;
  prof.p = number_list(j["p"], "p");
  for (double v : prof.p)
    if (v < 0.0 || v > 1.0)
      throw InputError("profile: probabilities must lie in [0,1]");
  return prof;
}

Json mixed_pair_to_json(const MixedStrategy& x, const MixedStrategy& y) {
  Json j;
  j["x"] = x;
  j["y"] = y;
  return j;
}

std::pair<MixedStrategy, MixedStrategy> mixed_pair_from_json(const Json& j) {
  expect_keys(j, "mixed pair", {"x", "y"});
  return {number_list(j["x"], "x"), number_list(j["y"], "y")};
}

Json graph_to_json(const BipartiteGraph& g) {
  Json j;
  j["n"] = g.n;
  j["d"] = g.d;
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  return j;
}

BipartiteGraph graph_from_json(const Json& j) {
  expect_keys(j, "graph", {"n", "d", "edges"});
  BipartiteGraph g;
  g.n = j["n"].get<int>();
  g.d = j["d"].get<int>();
  for (const auto& je : j["edges"]) {
    if (!je.is_array() || je.size() != 2)
      throw InputError("graph: edges must be [u, v] pairs");
    g.edges.push_back({je[0].get<int>(), je[1].get<int>()});
  }
  return g;
}

Json partition_to_json(const Partition& p) {
  Json j;
  j["k"] = p.k;
  j["S"] = p.S_parts;
  j["T"] = p.T_parts;
  return j;
}

Partition partition_from_json(const Json& j) {
  expect_keys(j, "partition", {"k", "S", "T"});
  Partition p;
  p.k = j["k"].get<int>();
  p.S_parts = j["S"].get<std::vector<std::vector<int>>>();
  p.T_parts = j["T"].get<std::vector<std::vector<int>>>();
  return p;
}

Json node_map_to_json(const NormalizationResult& res) {
  Json arr = Json::array();
  for (const auto& [orig, replicas] : res.node_map) {
    Json entry;
    entry["orig"] = orig;
    entry["replicas"] = replicas;
    arr.push_back(std::move(entry));
  }
  return arr;
}

Json problem_to_json(const CourseAllocationProblem& p) {
  Json j;
  j["capacities"] = p.capacities;
  Json students = Json::array();
  for (const auto& s : p.students) {
    Json js;
    js["bundles"] = s.bundles;
    js["pref"] = s.pref;
    students.push_back(std::move(js));
  }
  j["students"] = std::move(students);
  return j;
}

CourseAllocationProblem problem_from_json(const Json& j) {
  expect_keys(j, "problem", {"capacities", "students"});
  CourseAllocationProblem p;
  p.capacities = j["capacities"].get<std::vector<int>>();
  for (const auto& js : j["students"]) {
    expect_keys(js, "student", {"bundles", "pref"});
    CourseAllocationProblem::Student s;
    s.bundles = js["bundles"].get<std::vector<std::vector<int>>>();
    s.pref = js["pref"].get<std::vector<int>>();
    p.students.push_back(std::move(s));
  }
  auto errs = validate_problem(p);
  if (!errs.empty()) throw InputError("problem: " + errs.front());
  return p;
}

Json solution_to_json(const AllocationSolution& s) {
  Json j;
  j["prices"] = s.prices;
  j["budgets"] = s.budgets;
  j["bundles"] = s.bundles;
  return j;
}

AllocationSolution solution_from_json(const Json& j) {
  expect_keys(j, "solution", {"prices", "budgets"}, {"bundles"});
  AllocationSolution s;
  s.prices = number_list(j["prices"], "prices");
  s.budgets = number_list(j["budgets"], "budgets");
  if (j.contains("bundles")) s.bundles = j["bundles"].get<std::vector<int>>();
  return s;
}

Json incomes_to_json(const IncomeDistribution& d) {
  Json j;
  j["incomes"] = d.incomes;
  return j;
}

IncomeDistribution incomes_from_json(const Json& j) {
  expect_keys(j, "incomes", {"incomes"});
  IncomeDistribution d;
  d.incomes = number_list(j["incomes"], "incomes");
  return d;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ppadforge
