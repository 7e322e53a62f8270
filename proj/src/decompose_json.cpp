#include <json.hpp>

#include "icm/decompose.hpp"

namespace icm {

namespace {

nlohmann::json interval_json(const Interval& j) { return {j.lo.str(), j.hi.str()}; }

nlohmann::json restriction_json(const RestrictionInfo& r) {
  return {{"class", to_string(r.cls)}, {"open", r.open}, {"image", interval_json(r.image)}};
}

}  // namespace

std::string to_json(const Decomposition& d, int indent) {
  nlohmann::json doc;
  doc["case"] = to_string(d.kind);
  doc["roles_swapped"] = d.roles_swapped;
  doc["points"] = nlohmann::json::array();
  for (const auto& p : d.points) doc["points"].push_back(p.str());
  doc["intervals"] = nlohmann::json::array();
  for (const auto& info : d.intervals) {
    nlohmann::json item;
    item["interval"] = interval_json(info.interval);
    item["f"] = restriction_json(info.f);
    item["g"] = restriction_json(info.g);
    if (info.f2) item["f2"] = restriction_json(*info.f2);
    if (info.g2) item["g2"] = restriction_json(*info.g2);
    doc["intervals"].push_back(std::move(item));
  }
  return doc.dump(indent);
}

}  // namespace icm
