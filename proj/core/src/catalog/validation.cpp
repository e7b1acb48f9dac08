#include "resreg/catalog/validation.hpp"

#include <algorithm>
#include <cctype>

#include "resreg/util/strings.hpp"
#include "resreg/util/url.hpp"

namespace resreg::catalog {

bool is_spdx_like(std::string_view license) {
  if (license.empty() || license.size() > 64) return false;
  return std::all_of(license.begin(), license.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '.' || c == '+';
  });
}

ValidationResult validate_dataset(const Dataset& d, const std::set<std::string>& known_task_ids) {
  ValidationResult result;
  auto fail = [&](std::string field, std::string message) {
    result.violations.push_back({std::move(field), std::move(message)});
  };

  if (util::trim(d.english_name).empty()) fail("english_name", "must not be empty");

  if (d.task_ids.empty()) fail("task_ids", "at least one task is required");
  std::set<std::string> seen_tasks;
  for (const auto& id : d.task_ids) {
    if (!seen_tasks.insert(id).second) {
      fail("task_ids", "duplicate task id '" + id + "'");
    } else if (!known_task_ids.contains(id)) {
      fail("task_ids", "unknown task id '" + id + "'");
    }
  }

  if (d.varieties.empty()) fail("varieties", "at least one language variety is required");

  int hosted = 0;
  for (std::size_t i = 0; i < d.links.size(); ++i) {
    const auto& link = d.links[i];
    if (!util::parse_http_url(link.url)) {
      fail("links[" + std::to_string(i) + "].url", "must be an absolute http(s) URL");
    }
    if (link.kind == LinkKind::kHostedCopy) ++hosted;
  }
  if (hosted > 1) fail("links", "multiple hosted copies");

  if (d.license && !is_spdx_like(*d.license)) {
    fail("license", "must be an SPDX-style identifier");
  }
  if (d.year && *d.year < kMinDatasetYear) {
    fail("year", "must be >= " + std::to_string(kMinDatasetYear));
  }

  if (d.preservation) {
    const int score = d.preservation->score;
    if (score < kMinRating || score > kMaxRating) {
      fail("preservation.score", "must be between 1 and 5");
    } else if (!d.policy) {
      fail("policy", "required when a preservation rating is present");
    } else if (*d.policy != derive_storage_policy(*d.preservation)) {
      fail("policy", "inconsistent with preservation rating");
    }
  } else if (d.policy) {
    fail("policy", "derived from the preservation rating; cannot be set without one");
  }

  return result;
}

ValidationResult validate_task(const NlpTask& t) {
  ValidationResult result;
  auto fail = [&](std::string field, std::string message) {
    result.violations.push_back({std::move(field), std::move(message)});
  };

  if (util::trim(t.name).empty()) fail("name", "must not be empty");

  const bool acronym_ok =
      !t.acronym.empty() && t.acronym.size() <= 12 &&
      std::all_of(t.acronym.begin(), t.acronym.end(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
      });
  if (!acronym_ok) fail("acronym", "must be 1-12 characters of A-Z, 0-9 or '-'");

  std::set<std::string> seen;
  for (const auto& slug : t.papers_with_code_ids) {
    if (slug.empty()) {
      fail("papers_with_code_ids", "slugs must not be empty");
    } else if (!seen.insert(slug).second) {
      fail("papers_with_code_ids", "duplicate slug '" + slug + "'");
    }
  }
  return result;
}

}  // namespace resreg::catalog
