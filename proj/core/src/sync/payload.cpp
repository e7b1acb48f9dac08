#include "resreg/sync/payload.hpp"

#include <algorithm>

#include "resreg/error.hpp"
#include "resreg/util/crypto.hpp"

namespace resreg::sync {

using nlohmann::json;

void to_json(json& j, const ExternalDatasetPayload& p) {
  j = json::object();
  j["name"] = p.name;
  if (p.full_name) j["full_name"] = *p.full_name;
  if (p.description) j["description"] = *p.description;
  if (p.url) j["url"] = *p.url;
  j["languages"] = p.languages;
}

ExternalDatasetPayload payload_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kProtocol, "dataset payload must be an object");
  ExternalDatasetPayload p;
  p.name = j.value("name", "");
  auto opt = [&](const char* key) -> std::optional<std::string> {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };
  p.full_name = opt("full_name");
  p.description = opt("description");
  p.url = opt("url");
  if (auto it = j.find("languages"); it != j.end() && it->is_array()) {
    for (const auto& l : *it) {
      if (l.is_string()) p.languages.push_back(l.get<std::string>());
    }
  }
  return p;
}

namespace {

std::string_view language_tag(catalog::LanguageVariety) {
  // The external catalog has no notion of regional varieties.
  return "portuguese";
}

}  // namespace

ExternalDatasetPayload to_external_payload(const catalog::Dataset& d) {
  ExternalDatasetPayload p;
  p.name = d.english_name;
  p.full_name = d.native_name;
  p.description = d.description;
  if (const auto* home = d.find_link(catalog::LinkKind::kHomepage)) p.url = home->url;
  for (auto v : d.varieties) {
    std::string tag(language_tag(v));
    if (std::find(p.languages.begin(), p.languages.end(), tag) == p.languages.end()) {
      p.languages.push_back(std::move(tag));
    }
  }
  return p;
}

std::string payload_hash(const ExternalDatasetPayload& payload) {
  return util::sha256_hex(json(payload).dump());
}

}  // namespace resreg::sync
