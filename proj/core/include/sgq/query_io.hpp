#pragma once

#include <string>

#include "sgq/inference.hpp"
#include "sgq/query.hpp"

namespace sgq {

// Query file, 0-based indices:
// {"n": int,
//  "evidence": {"links": [[u,v,val]...], "features": [[u,[bits...]]...],
//               "labels": [[u,c]...]},
//  "target":   {"links": [[u,v,val]...], "labels": [[u,c]...],
//               "features": [[u,[bits...]]...]}}
SubgraphQuery query_from_json_text(const std::string& text,
                                   const std::string& context);
SubgraphQuery load_query(const std::string& path);
std::string query_to_json_text(const SubgraphQuery& q);
void save_query(const SubgraphQuery& q, const std::string& path);

// Answer file mirroring QueryAnswer with probabilities as decimal floats.
std::string answer_to_json_text(const QueryAnswer& answer);
void save_answer(const QueryAnswer& answer, const std::string& path);
QueryAnswer load_answer(const std::string& path);

}  // namespace sgq
