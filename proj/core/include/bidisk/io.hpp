#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bidisk/model_space.hpp"

namespace bidisk {

using json = nlohmann::json;

// Terms [{"a","b","re","im"}]; omitted terms are zero.
json poly_to_json(const BiPoly& p);
BiPoly poly_from_json(const json& j);

// {"d","p","Q","label"}.  Loading does not check innerness.
json theta_to_json(const RationalInnerMatrix& theta);
RationalInnerMatrix theta_from_json(const json& j);

json table_to_json(const TaylorTable& T);
TaylorTable table_from_json(const json& j);

json report_to_json(const RankReport& r);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace bidisk
