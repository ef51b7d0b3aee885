#pragma once

#include <string>

#include "pcss/bounds.hpp"
#include "pcss/gf2k.hpp"
#include "pcss/linear_code.hpp"
#include "pcss/pcss_code.hpp"
#include "pcss/sim.hpp"

namespace pcss {

/// JSON forms of the domain objects. Matrices appear as arrays of '0'/'1'
/// row strings, bit vectors as single strings, entropies in bits.

std::string hash_to_json(const HashRealization& hash);
HashRealization hash_from_json(const std::string& text);

std::string qcode_to_json(const PcssCode& code);
std::string css_report_to_json(const CssReport& report);
std::string distance_to_json(const DistanceReport& report);
std::string stats_to_json(const BitflipStats& stats);
std::string channel_to_json(const SingleQubitPauli& single, std::size_t n);
/// Optionally embeds the channel itself under "channel".
std::string entropies_to_json(const ChannelEntropies& ent,
                              const SingleQubitPauli* single = nullptr);
std::string bound_to_json(const EtaResult& point);
std::string sim_report_to_json(const LogicalErrorReport& report,
                               const EtaVerdict* verdict = nullptr,
                               const EtaResult* bound = nullptr);

/// CSV with header "r_q,eta,epsilon_prime,mode".
std::string rate_curve_to_csv(const std::vector<RatePoint>& points, BoundMode mode);

}  // namespace pcss
