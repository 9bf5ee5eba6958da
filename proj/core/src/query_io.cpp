#include "sgq/query_io.hpp"

#include <fstream>

#include <json.hpp>

#include "sgq/errors.hpp"

namespace sgq {

namespace {

using nlohmann::json;

json links_json(const std::vector<LinkAssignment>& links) {
  json arr = json::array();
  for (const auto& l : links) arr.push_back({l.u, l.v, l.value});
  return arr;
}

json features_json(const std::vector<FeatureAssignment>& features) {
  json arr = json::array();
  for (const auto& f : features) {
    json bits = json::array();
    for (const uint8_t b : f.bits) bits.push_back((int)b);
    arr.push_back({f.node, std::move(bits)});
  }
  return arr;
}

json labels_json(const std::vector<LabelAssignment>& labels) {
  json arr = json::array();
  for (const auto& l : labels) arr.push_back({l.node, l.label});
  return arr;
}

std::vector<LinkAssignment> links_from(const json& arr) {
  std::vector<LinkAssignment> out;
  for (const auto& e : arr) {
    out.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  }
  return out;
}

std::vector<FeatureAssignment> features_from(const json& arr) {
  std::vector<FeatureAssignment> out;
  for (const auto& e : arr) {
    FeatureAssignment f;
    f.node = e.at(0).get<int>();
    for (const auto& b : e.at(1)) f.bits.push_back(b.get<int>() ? 1 : 0);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<LabelAssignment> labels_from(const json& arr) {
  std::vector<LabelAssignment> out;
  for (const auto& e : arr) {
    out.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << text;
}

}  // namespace

SubgraphQuery query_from_json(const json& j, const std::string& context);

SubgraphQuery query_from_json(const json& j, const std::string& context) {
  try {
    SubgraphQuery q;
    q.n_nodes = j.at("n").get<int>();
    if (j.contains("evidence")) {
      const json& e = j.at("evidence");
      if (e.contains("links")) q.evidence_links = links_from(e.at("links"));
      if (e.contains("features")) {
        q.evidence_features = features_from(e.at("features"));
      }
      if (e.contains("labels")) q.evidence_labels = labels_from(e.at("labels"));
    }
    if (j.contains("target")) {
      const json& t = j.at("target");
      if (t.contains("links")) q.target_links = links_from(t.at("links"));
      if (t.contains("labels")) q.target_labels = labels_from(t.at("labels"));
      if (t.contains("features")) q.target_features = features_from(t.at("features"));
    }
    if (j.contains("node_origin")) {
      q.node_origin = j.at("node_origin").get<std::vector<long>>();
    }
    validate_query(q);
    return q;
  } catch (const json::exception& e) {
    throw ParseError(context + ": " + e.what());
  }
}

SubgraphQuery query_from_json_text(const std::string& text,
                                   const std::string& context) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(context + ": " + e.what());
  }
  return query_from_json(j, context);
}

SubgraphQuery load_query(const std::string& path) {
  return query_from_json(read_json_file(path), path);
}

json query_to_json(const SubgraphQuery& q);

json query_to_json(const SubgraphQuery& q) {
  json j;
  j["n"] = q.n_nodes;
  j["evidence"] = {{"links", links_json(q.evidence_links)},
                   {"features", features_json(q.evidence_features)},
                   {"labels", labels_json(q.evidence_labels)}};
  j["target"] = {{"links", links_json(q.target_links)},
                 {"labels", labels_json(q.target_labels)},
                 {"features", features_json(q.target_features)}};
  if (!q.node_origin.empty()) j["node_origin"] = q.node_origin;
  return j;
}

std::string query_to_json_text(const SubgraphQuery& q) {
  return query_to_json(q).dump(2) + "\n";
}

void save_query(const SubgraphQuery& q, const std::string& path) {
  write_text(query_to_json_text(q), path);
}

std::string answer_to_json_text(const QueryAnswer& answer) {
  json j;
  j["mode"] = answer.mode;
  if (answer.mode == "mc") j["samples"] = answer.samples;
  j["joint_prob"] = answer.joint_prob;
  j["joint_log_prob"] = answer.joint_log_prob;
  j["empty_target"] = answer.empty_target;
  json links = json::array();
  for (const auto& lp : answer.links) {
    links.push_back({{"u", lp.u},
                     {"v", lp.v},
                     {"value", lp.value},
                     {"p_value", lp.p_value},
                     {"p_link", lp.p_link}});
  }
  j["links"] = std::move(links);
  json labels = json::array();
  for (const auto& lp : answer.labels) {
    labels.push_back({{"node", lp.node},
                      {"label", lp.label},
                      {"p_label", lp.p_label},
                      {"distribution", lp.distribution}});
  }
  j["labels"] = std::move(labels);
  json features = json::array();
  for (const auto& fp : answer.features) {
    features.push_back(
        {{"node", fp.node}, {"p_vector", fp.p_vector}, {"per_dim", fp.per_dim}});
  }
  j["features"] = std::move(features);
  return j.dump(2) + "\n";
}

void save_answer(const QueryAnswer& answer, const std::string& path) {
  write_text(answer_to_json_text(answer), path);
}

QueryAnswer load_answer(const std::string& path) {
  const json j = read_json_file(path);
  try {
    QueryAnswer a;
    a.mode = j.at("mode").get<std::string>();
    if (j.contains("samples")) a.samples = j.at("samples").get<long>();
    a.joint_prob = j.at("joint_prob").get<double>();
    a.joint_log_prob = j.at("joint_log_prob").get<double>();
    a.empty_target = j.at("empty_target").get<bool>();
    for (const auto& e : j.at("links")) {
      a.links.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                         e.at("value").get<int>(), e.at("p_value").get<double>(),
                         e.at("p_link").get<double>()});
    }
    for (const auto& e : j.at("labels")) {
      LabelProbability lp;
      lp.node = e.at("node").get<int>();
      lp.label = e.at("label").get<int>();
      lp.p_label = e.at("p_label").get<double>();
      lp.distribution = e.at("distribution").get<std::vector<double>>();
      a.labels.push_back(std::move(lp));
    }
    for (const auto& e : j.at("features")) {
      FeatureProbability fp;
      fp.node = e.at("node").get<int>();
      fp.p_vector = e.at("p_vector").get<double>();
      fp.per_dim = e.at("per_dim").get<std::vector<double>>();
      a.features.push_back(std::move(fp));
    }
    return a;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace sgq
