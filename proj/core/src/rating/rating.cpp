#include "resreg/rating/rating.hpp"

#include <algorithm>

#include "resreg/catalog/json.hpp"
#include "resreg/util/strings.hpp"
#include "resreg/util/url.hpp"

namespace resreg::rating {

using catalog::Dataset;
using catalog::LinkKind;
using catalog::PreservationRating;
using catalog::RatingSource;

RatingConfig RatingConfig::defaults() {
  return RatingConfig{
      .open_licenses = {"MIT", "Apache-2.0", "CC-BY*", "CC0*"},
      .institution_suffixes = {"edu", "ac.uk", "ac.pt", "up.pt", "ulisboa.pt", "uminho.pt",
                               "inesctec.pt", "usp.br", "unicamp.br"},
  };
}

RatingConfig RatingConfig::from(const util::KeyValueConfig& config) {
  auto cfg = defaults();
  if (auto v = config.get_list("open_licenses")) cfg.open_licenses = *v;
  if (auto v = config.get_list("institution_suffixes")) cfg.institution_suffixes = *v;
  return cfg;
}

bool RatingConfig::is_open_license(std::string_view license) const {
  const std::string id = util::trim(license);
  if (id.empty()) return false;
  return std::any_of(open_licenses.begin(), open_licenses.end(), [&](const std::string& entry) {
    if (!entry.empty() && entry.back() == '*') {
      return util::starts_with_icase(id, std::string_view(entry).substr(0, entry.size() - 1));
    }
    return util::iequals(id, entry);
  });
}

bool RatingConfig::is_institution_host(std::string_view host) const {
  const std::string h = util::casefold(host);
  return std::any_of(institution_suffixes.begin(), institution_suffixes.end(),
                     [&](const std::string& raw) {
                       std::string suffix = util::casefold(util::trim(raw));
                       while (!suffix.empty() && suffix.front() == '.') suffix.erase(0, 1);
                       if (suffix.empty() || h.size() < suffix.size()) return false;
                       if (h.compare(h.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
                       return h.size() == suffix.size() || h[h.size() - suffix.size() - 1] == '.';
                     });
}

void to_json(nlohmann::json& j, const PreservationFeatures& f) {
  j = nlohmann::json{
      {"has_hosted_copy", f.has_hosted_copy},
      {"has_open_license", f.has_open_license},
      {"all_links_alive", f.all_links_alive},
      {"institution_hosted", f.institution_hosted},
      {"years_since_update", f.years_since_update ? nlohmann::json(*f.years_since_update) : nlohmann::json()},
  };
}

PreservationFeatures extract_features(const Dataset& dataset, std::span<const LinkProbeResult> probes,
                                      util::Timestamp now, const RatingConfig& config) {
  auto is_alive = [&](const std::string& url) {
    return std::any_of(probes.begin(), probes.end(),
                       [&](const LinkProbeResult& p) { return p.url == url && p.alive(); });
  };

  PreservationFeatures f;
  if (const auto* hosted = dataset.hosted_copy()) f.has_hosted_copy = is_alive(hosted->url);
  f.has_open_license = dataset.license && config.is_open_license(*dataset.license);
  f.all_links_alive = !dataset.links.empty() &&
                      std::all_of(dataset.links.begin(), dataset.links.end(),
                                  [&](const auto& link) { return is_alive(link.url); });
  f.institution_hosted = std::any_of(dataset.links.begin(), dataset.links.end(), [&](const auto& link) {
    const auto url = util::parse_http_url(link.url);
    return url && config.is_institution_host(url->host);
  });
  if (dataset.year) f.years_since_update = std::max(0, util::year_of(now) - *dataset.year);
  return f;
}

PreservationRating predict_rating(const PreservationFeatures& f) {
  int score = 1;
  if (f.has_hosted_copy && f.has_open_license) {
    score = 5;
  } else if (f.has_hosted_copy) {
    score = 4;
  } else if (f.all_links_alive && f.institution_hosted) {
    score = 3;
  } else if (f.all_links_alive) {
    score = 2;
  }
  return PreservationRating{score, RatingSource::kPredicted};
}

void to_json(nlohmann::json& j, const RatingReport& r) {
  auto probes = nlohmann::json::array();
  for (const auto& p : r.probes) {
    nlohmann::json entry{{"url", p.url},
                         {"status", p.alive() ? "ALIVE" : "DEAD"},
                         {"probed_at", util::format_utc(p.probed_at)}};
    if (p.http_code) entry["http_code"] = *p.http_code;
    probes.push_back(std::move(entry));
  }
  j = nlohmann::json{
      {"features", r.features},
      {"rating", r.rating},
      {"policy", catalog::to_string(r.policy)},
      {"probes", std::move(probes)},
  };
}

RatingReport rate(const Dataset& dataset, const LinkProber& prober, util::Timestamp now,
                  const RatingConfig& config) {
  RatingReport report;
  report.probes = prober.probe(dataset);
  report.features = extract_features(dataset, report.probes, now, config);
  report.rating = predict_rating(report.features);
  report.policy = catalog::derive_storage_policy(report.rating);
  return report;
}

}  // namespace resreg::rating
