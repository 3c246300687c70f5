#pragma once

// Channel-config JSON, region CSV/JSON and containment reports.
//
// Region CSV: header "protocol,convention,k,R_a,R_b" followed by one
// "mu_<state>" column per state used by any sample (ascending id). Numbers
// carry 12 significant digits; the R_a = 0 endpoint is written as k = inf.
// Empty cells mean the state is not part of that sample's schedule.

#include <string>
#include <string_view>

#include "diamond/channel.hpp"
#include "diamond/regions.hpp"

namespace diamond::io {

// {"variant": ..., "snr_db": {"a1","a2","b1","b2", "ab"?, "12"?},
//  "convention"?}. "snr_linear" may replace "snr_db". Unknown keys are
// rejected, and "ab" / "12" must be given exactly when the variant has
// that link.
ChannelConfig channel_from_json(std::string_view text);
ChannelConfig load_channel(const std::string& path);

// Snapshot with linear SNRs (exact, and valid for zero-SNR links).
std::string channel_to_json(const ChannelConfig& channel);

std::string format_number(double v);

std::string region_to_csv(const regions::RateRegion& region);

// The CSV carries no channel; the caller supplies it.
regions::RateRegion region_from_csv(std::string_view text,
                                    const ChannelConfig& channel);

// `manifest_json` is embedded verbatim as the "manifest" member (must be a
// JSON object, or empty for {}).
std::string region_to_json(const regions::RateRegion& region,
                           std::string_view manifest_json = {});

std::string report_to_csv(const regions::ContainmentReport& report);
std::string report_to_json(const regions::ContainmentReport& report,
                           std::string_view manifest_json = {});

std::string read_text(const std::string& path);
void write_text(const std::string& path, std::string_view text);

}  // namespace diamond::io
