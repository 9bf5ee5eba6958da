#include "sgq/checkpoint.hpp"

#include <fstream>

#include <json.hpp>

#include "sgq/errors.hpp"

namespace sgq {

namespace {
using nlohmann::json;
}

void save_model(const VgaePlusModel& model, const std::string& path) {
  json j;
  j["format_version"] = 1;
  j["dims"] = {{"k", model.dims.feature_dim},
               {"l", model.dims.label_dim},
               {"d", model.dims.embed_dim},
               {"hidden", model.dims.hidden_dim}};
  j["weights"] = {{"alpha", model.weights.alpha},
                  {"beta", model.weights.beta},
                  {"gamma", model.weights.gamma}};
  json tensors;
  for (const auto& [name, t] : model.named_parameters()) {
    tensors[name] = {{"shape", {t.rows(), t.cols()}}, {"data", t.value()}};
  }
  j["tensors"] = std::move(tensors);
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << j.dump(2) << "\n";
}

VgaePlusModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw ValidationError(path + ": unsupported checkpoint format version");
    }
    ModelDims dims;
    dims.feature_dim = j.at("dims").at("k").get<long>();
    dims.label_dim = j.at("dims").at("l").get<long>();
    dims.embed_dim = j.at("dims").at("d").get<long>();
    dims.hidden_dim = j.at("dims").at("hidden").get<long>();
    ReconWeights weights;
    weights.alpha = j.at("weights").at("alpha").get<double>();
    weights.beta = j.at("weights").at("beta").get<double>();
    weights.gamma = j.at("weights").at("gamma").get<double>();
    VgaePlusModel model = VgaePlusModel::zeros(dims, weights);
    for (auto& [name, t] : model.named_parameters()) {
      const json& entry = j.at("tensors").at(name);
      const long rows = entry.at("shape").at(0).get<long>();
      const long cols = entry.at("shape").at(1).get<long>();
      if (rows != t.rows() || cols != t.cols()) {
        throw ValidationError(path + ": tensor '" + name + "' has shape " +
                              std::to_string(rows) + "x" + std::to_string(cols) +
                              ", expected " + std::to_string(t.rows()) + "x" +
                              std::to_string(t.cols()));
      }
      const auto data = entry.at("data").get<std::vector<double>>();
      Tensor mut = t;
      mut.mutable_value() = data;
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace sgq
