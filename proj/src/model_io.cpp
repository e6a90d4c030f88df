#include "vnpda/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "vnpda/errors.hpp"

namespace vnpda {

void write_model_json(std::ostream& out, const FittedModel& model) {
  nlohmann::ordered_json doc;
  doc["format"] = "vnpda-model";
  doc["version"] = 1;
  doc["hyperparameters"] = {
      {"a_y", model.hyper.a_y}, {"b_y", model.hyper.b_y}, {"u", model.hyper.u}};
  doc["n1"] = model.n1;
  doc["n0"] = model.n0;
  doc["selection"] = {{"iterations", model.selection.iterations},
                      {"converged", model.selection.converged},
                      {"last_change", model.selection.last_change}};
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < model.p(); ++j) {
    const VariableModel& v = model.variables[j];
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [code, node] : v.counts.nodes()) {
      counts[code.to_string()] = {node.group1, node.group0};
    }
    vars.push_back({{"name", v.name},
                    {"mean", v.tree.centring.mean},
                    {"sd", v.tree.centring.sd},
                    {"degenerate", v.degenerate},
                    {"c", v.tree.c},
                    {"depth", v.tree.depth},
                    {"omega", model.selection.omega.at(j)},
                    {"log_bf", v.log_bf},
                    {"counts", std::move(counts)}});
  }
  doc["variables"] = std::move(vars);
  out << doc.dump(1) << '\n';
}

FittedModel read_model_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "vnpda-model") throw InputError("model: not a vnpda model file");
    if (doc.value("version", 0) != 1) throw InputError("model: unsupported version");
    FittedModel model;
    const auto& h = doc.at("hyperparameters");
    model.hyper = Hyperparameters{h.at("a_y").get<double>(), h.at("b_y").get<double>(),
                                  h.at("u").get<double>()};
    validate(model.hyper);
    model.n1 = doc.at("n1").get<std::size_t>();
    model.n0 = doc.at("n0").get<std::size_t>();
    const auto& sel = doc.at("selection");
    model.selection.iterations = sel.at("iterations").get<int>();
    model.selection.converged = sel.at("converged").get<bool>();
    model.selection.last_change = sel.value("last_change", 0.0);
    for (const auto& v : doc.at("variables")) {
      VariableModel var;
      var.name = v.at("name").get<std::string>();
      var.tree = PolyaTreeSpec{{v.at("mean").get<double>(), v.at("sd").get<double>()},
                               v.at("c").get<double>(),
                               v.at("depth").get<int>()};
      validate(var.tree);
      var.degenerate = v.value("degenerate", false);
      var.log_bf = v.at("log_bf").get<double>();
      std::vector<std::pair<PathCode, NodeCounts>> nodes;
      for (const auto& [path, pair] : v.at("counts").items()) {
        nodes.emplace_back(PathCode::from_string(path),
                           NodeCounts{pair.at(0).get<std::uint32_t>(),
                                      pair.at(1).get<std::uint32_t>()});
      }
      var.counts = CellCounts::from_nodes(var.tree.depth, nodes);
      const NodeCounts root = var.counts.root();
      if (root.group1 != model.n1 || root.group0 != model.n0) {
        throw InputError("model: counts of variable '" + var.name +
                         "' do not match the group sizes");
      }
      const double omega = v.at("omega").get<double>();
      if (!(omega > 0.0 && omega < 1.0)) throw InputError("model: omega outside (0, 1)");
      model.selection.omega.push_back(omega);
      model.variables.push_back(std::move(var));
    }
    if (model.variables.empty()) throw InputError("model: no variables");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const FittedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_model_json(out, model);
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_model_json(in);
}

}  // namespace vnpda
