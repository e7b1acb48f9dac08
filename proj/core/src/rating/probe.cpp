#include "resreg/rating/probe.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "resreg/error.hpp"
#include "resreg/net/http.hpp"
#include "resreg/util/url.hpp"

namespace resreg::rating {

LinkProbeResult probe_link(const std::string& url, const ProbeOptions& options) {
  LinkProbeResult result;
  result.url = url;
  result.status = ProbeStatus::kDead;
  result.probed_at = util::now_utc();
  if (!util::parse_http_url(url)) return result;

  net::HttpRequest req;
  req.method = "HEAD";
  req.url = url;
  req.timeout = options.timeout;
  req.follow_redirects = true;
  try {
    auto res = net::send(req);
    if (res.status == 405) {
      req.method = "GET";
      res = net::send(req);
    }
    result.http_code = res.status;
    if (res.status >= 200 && res.status <= 399) result.status = ProbeStatus::kAlive;
  } catch (const Error&) {
    // unreachable, timed out, or TLS failure: DEAD without a code
  }
  result.probed_at = util::now_utc();
  return result;
}

std::vector<LinkProbeResult> probe_links(std::span<const std::string> urls, const ProbeOptions& options) {
  std::vector<LinkProbeResult> results(urls.size());
  if (urls.empty()) return results;

  const std::size_t workers = std::clamp<std::size_t>(options.max_in_flight, 1, urls.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < urls.size(); i = next++) {
      results[i] = probe_link(urls[i], options);
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  return results;
}

std::vector<LinkProbeResult> HttpLinkProber::probe(const catalog::Dataset& dataset) const {
  std::vector<std::string> urls;
  urls.reserve(dataset.links.size());
  for (const auto& link : dataset.links) urls.push_back(link.url);
  return probe_links(urls, options_);
}

std::vector<LinkProbeResult> RecordedStateProber::probe(const catalog::Dataset& dataset) const {
  std::vector<LinkProbeResult> out;
  out.reserve(dataset.links.size());
  const auto now = util::now_utc();
  for (const auto& link : dataset.links) {
    LinkProbeResult r;
    r.url = link.url;
    r.status = link.alive == catalog::Liveness::kAlive ? ProbeStatus::kAlive : ProbeStatus::kDead;
    r.probed_at = now;
    out.push_back(std::move(r));
  }
  return out;
}

void record_probes(catalog::Dataset& dataset, std::span<const LinkProbeResult> probes) {
  for (auto& link : dataset.links) {
    const auto it = std::find_if(probes.begin(), probes.end(),
                                 [&](const LinkProbeResult& p) { return p.url == link.url; });
    if (it != probes.end()) {
      link.alive = it->alive() ? catalog::Liveness::kAlive : catalog::Liveness::kDead;
    }
  }
}

}  // namespace resreg::rating
