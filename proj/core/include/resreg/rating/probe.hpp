#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resreg/catalog/types.hpp"
#include "resreg/util/time.hpp"

namespace resreg::rating {

enum class ProbeStatus { kAlive, kDead };

struct LinkProbeResult {
  std::string url;
  ProbeStatus status = ProbeStatus::kDead;
  std::optional<int> http_code;
  util::Timestamp probed_at{};

  bool alive() const { return status == ProbeStatus::kAlive; }
};

struct ProbeOptions {
  std::chrono::milliseconds timeout{5'000};
  std::size_t max_in_flight = 8;
};

/// HEAD each URL (GET when the server answers 405), following at most 5
/// redirects. ALIVE iff a 200..399 status arrived within the timeout.
/// One result per input, in input order; never throws for unreachable or
/// malformed URLs.
std::vector<LinkProbeResult> probe_links(std::span<const std::string> urls,
                                         const ProbeOptions& options = {});

LinkProbeResult probe_link(const std::string& url, const ProbeOptions& options = {});

/// Source of link liveness for rating a dataset.
class LinkProber {
 public:
  virtual ~LinkProber() = default;
  virtual std::vector<LinkProbeResult> probe(const catalog::Dataset& dataset) const = 0;

  /// True when results reflect a fresh observation worth recording on the links.
  virtual bool observes_network() const = 0;
};

class HttpLinkProber final : public LinkProber {
 public:
  explicit HttpLinkProber(ProbeOptions options = {}) : options_(options) {}
  std::vector<LinkProbeResult> probe(const catalog::Dataset& dataset) const override;
  bool observes_network() const override { return true; }

 private:
  ProbeOptions options_;
};

/// Offline mode: reuses each link's recorded state, UNPROBED counting as DEAD.
class RecordedStateProber final : public LinkProber {
 public:
  std::vector<LinkProbeResult> probe(const catalog::Dataset& dataset) const override;
  bool observes_network() const override { return false; }
};

/// Writes probe outcomes back onto the matching links' `alive` field.
void record_probes(catalog::Dataset& dataset, std::span<const LinkProbeResult> probes);

}  // namespace resreg::rating
