#include "resreg/client/client.hpp"

#include <cstdlib>

#include "net/api.hpp"
#include "resreg/catalog/json.hpp"
#include "resreg/error.hpp"
#include "resreg/util/strings.hpp"

namespace resreg::client {

using nlohmann::json;

std::string_view to_string(FallbackReason reason) {
  return reason == FallbackReason::kNoHostedCopy ? "NO_HOSTED_COPY" : "FETCH_FAILED";
}

const catalog::Dataset& metadata_of(const LoadResult& result) {
  return std::visit([](const auto& r) -> const catalog::Dataset& { return r.metadata; }, result);
}

json to_json(const Table& table) {
  auto rows = json::array();
  for (const auto& record : table) {
    auto row = json::object();
    for (const auto& [key, cell] : record) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              row[key] = nullptr;
            } else {
              row[key] = v;
            }
          },
          cell);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Table table_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::kProtocol, "rows must be a JSON array");
  Table table;
  table.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_object()) throw Error(ErrorKind::kProtocol, "each row must be a JSON object");
    Record record;
    for (const auto& [key, value] : row.items()) {
      if (value.is_null()) {
        record[key] = std::monostate{};
      } else if (value.is_boolean()) {
        record[key] = value.get<bool>();
      } else if (value.is_number_integer()) {
        record[key] = value.get<std::int64_t>();
      } else if (value.is_number_float()) {
        record[key] = value.get<double>();
      } else if (value.is_string()) {
        record[key] = value.get<std::string>();
      } else {
        throw Error(ErrorKind::kProtocol, "row field '" + key + "' is not a scalar");
      }
    }
    table.push_back(std::move(record));
  }
  return table;
}

RegistryClient::RegistryClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

RegistryClient RegistryClient::from_environment() {
  const char* url = std::getenv(kRegistryUrlEnv);
  return RegistryClient(url && *url ? url : "http://127.0.0.1:8080");
}

namespace {

json get_json(const std::string& url, std::chrono::milliseconds timeout) {
  net::HttpRequest req;
  req.url = url;
  req.timeout = timeout;
  const auto res = net::send(req);
  if (res.status != 200) net::throw_for_status(res, "GET " + url);
  return net::json_body(res, "GET " + url);
}

}  // namespace

std::vector<catalog::Dataset> RegistryClient::all_datasets(const std::optional<std::string>& nlp_task) const {
  std::string url = base_url_ + "/api/datasets";
  if (nlp_task) url += "?task=" + util::url_encode(*nlp_task);
  const auto body = get_json(url, timeout_);
  if (!body.is_array()) throw Error(ErrorKind::kProtocol, "GET " + url + ": expected a JSON array");
  std::vector<catalog::Dataset> out;
  out.reserve(body.size());
  for (const auto& item : body) out.push_back(catalog::parse_dataset(item));
  return out;
}

std::vector<catalog::NlpTask> RegistryClient::all_tasks() const {
  const std::string url = base_url_ + "/api/nlp-tasks";
  const auto body = get_json(url, timeout_);
  if (!body.is_array()) throw Error(ErrorKind::kProtocol, "GET " + url + ": expected a JSON array");
  std::vector<catalog::NlpTask> out;
  for (const auto& item : body) out.push_back(catalog::parse_task(item));
  return out;
}

catalog::Dataset RegistryClient::dataset_by_name(std::string_view english_name) const {
  if (english_name.empty()) throw Error(ErrorKind::kDomain, "english_name must not be empty");
  const std::string url = base_url_ + "/api/datasets/by-name/" + util::url_encode(english_name);
  return catalog::parse_dataset(get_json(url, timeout_));
}

LoadResult RegistryClient::load_dataset(std::string_view english_name, const HubFetcher& fetcher) const {
  auto metadata = dataset_by_name(english_name);
  const auto* hosted = metadata.hosted_copy();
  if (!hosted) return MetadataOnly{std::move(metadata), FallbackReason::kNoHostedCopy, {}};

  std::string locator = hosted->url;
  try {
    auto rows = fetcher.fetch(locator);
    return Materialized{std::move(metadata), std::move(rows), std::move(locator)};
  } catch (const std::exception& e) {
    return MetadataOnly{std::move(metadata), FallbackReason::kFetchFailed, e.what()};
  } catch (...) {
    return MetadataOnly{std::move(metadata), FallbackReason::kFetchFailed, "unknown fetch failure"};
  }
}

}  // namespace resreg::client
