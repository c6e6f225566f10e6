#include "holesim/protocol.hpp"

#include <algorithm>
#include <cstdio>

namespace holesim {

double registration_latency(const RegistrationOutcome& outcome, double link_latency_ms, double auth_fast_ms,
                            double auth_full_ms) {
  if (link_latency_ms < 0.0 || auth_fast_ms < 0.0 || auth_full_ms < 0.0)
    throw DomainError("registration_latency: parameters must be non-negative");
  return static_cast<double>(outcome.hops) * link_latency_ms +
         (outcome.auth == AuthMode::fast ? auth_fast_ms : auth_full_ms);
}

std::string to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::id_req: return "ID_REQ";
    case MessageKind::req_ack: return "REQ_ACK";
    case MessageKind::register_node: return "REGISTER";
    case MessageKind::cache_update: return "CACHE_UPDATE";
  }
  return "?";
}

std::string to_string(RegistrationPath path) {
  return path == RegistrationPath::intra_zone ? "intra_zone" : "inter_zone";
}

std::vector<std::vector<ZoneId>> adjacent_zones(std::span<const Zone> zones) {
  constexpr double tol = 1e-9;
  std::vector<std::vector<ZoneId>> out(zones.size());
  auto overlap = [](double a0, double a1, double b0, double b1) {
    return std::min(a1, b1) - std::max(a0, b0) > tol;
  };
  for (std::size_t a = 0; a < zones.size(); ++a)
    for (std::size_t b = 0; b < zones.size(); ++b) {
      if (a == b) continue;
      const Rect& ra = zones[a].region;
      const Rect& rb = zones[b].region;
      const bool vertical_edge = (std::abs(ra.x1 - rb.x0) < tol || std::abs(rb.x1 - ra.x0) < tol) &&
                                 overlap(ra.y0, ra.y1, rb.y0, rb.y1);
      const bool horizontal_edge = (std::abs(ra.y1 - rb.y0) < tol || std::abs(rb.y1 - ra.y0) < tol) &&
                                   overlap(ra.x0, ra.x1, rb.x0, rb.x1);
      if (vertical_edge || horizontal_edge) out[a].push_back(zones[b].id);
    }
  return out;
}

Registrar::Registrar(std::span<const Cluster> clusters, std::span<const Zone> zones, ProtocolParams params)
    : params_(params), zones_(zones.begin(), zones.end()), neighbors_(adjacent_zones(zones)),
      gz_cache_(zones.size()) {
  ClusterId max_id = 0;
  for (const auto& c : clusters) max_id = std::max(max_id, c.id);
  cluster_zone_.assign(clusters.empty() ? 0 : max_id + 1, std::nullopt);
  ch_cache_.resize(cluster_zone_.size());
  for (const auto& z : zones_)
    for (ClusterId c : z.clusters)
      if (c < cluster_zone_.size()) cluster_zone_[c] = z.id;
}

std::optional<ZoneId> Registrar::zone_of(ClusterId cluster) const {
  if (cluster >= cluster_zone_.size()) return std::nullopt;
  return cluster_zone_[cluster];
}

RegistrationOutcome Registrar::register_node(SensorNode& node, const Cluster& destination, std::uint64_t step) {
  if (!node.alive) throw DomainError("register_node: node " + std::to_string(node.id) + " is not alive");
  const auto dest_zone = zone_of(destination.id);
  if (!dest_zone) throw DomainError("register_node: unknown destination cluster " + std::to_string(destination.id));

  const auto origin_zone = zone_of(node.home_prefix);
  const auto& reachable = neighbors_[*dest_zone];
  if (!origin_zone ||
      (*origin_zone != *dest_zone &&
       std::find(reachable.begin(), reachable.end(), *origin_zone) == reachable.end()))
    throw RegistrationRefused("register_node: home prefix " + std::to_string(node.home_prefix) + " of node " +
                              std::to_string(node.id) + " is unknown at every reachable gateway");

  const bool rejoin = node.home_prefix == destination.id;
  if (!rejoin && destination.size() >= destination.max_threshold)
    throw AdmissionDeferred("register_node: cluster " + std::to_string(destination.id) + " is at its maximum");

  const Entity sensor{Entity::Kind::node, node.id};
  const Entity ch{Entity::Kind::cluster_head, destination.id};
  const Entity gz{Entity::Kind::gateway, zones_[*dest_zone].gateway_id};
  const std::size_t hb = params_.handshake_bytes;

  RegistrationOutcome out;
  out.node = node.id;
  out.from_cluster = node.home_prefix;
  out.to_cluster = destination.id;
  out.step = step;
  out.messages.push_back({MessageKind::register_node, sensor, ch, params_.register_bytes, true});
  out.messages.push_back({MessageKind::id_req, ch, gz, hb, false});
  if (*origin_zone == *dest_zone) {
    out.path = RegistrationPath::intra_zone;
    out.auth = AuthMode::fast;
    out.messages.push_back({MessageKind::req_ack, gz, ch, hb, true});
  } else {
    out.path = RegistrationPath::inter_zone;
    out.auth = AuthMode::full;
    const Entity peer{Entity::Kind::gateway, zones_[*origin_zone].gateway_id};
    out.messages.push_back({MessageKind::id_req, gz, peer, hb, false});
    out.messages.push_back({MessageKind::req_ack, peer, gz, hb, true});
    out.messages.push_back({MessageKind::req_ack, gz, ch, hb, true});
  }
  out.messages.push_back({MessageKind::cache_update, ch, ch, 0, true});
  out.messages.push_back({MessageKind::cache_update, gz, gz, 0, true});

  for (const auto& m : out.messages) {
    out.bytes += m.payload_bytes;
    if (m.is_handshake()) ++out.hops;
  }
  out.latency_ms = registration_latency(out, params_.link_latency_ms, params_.auth_fast_ms, params_.auth_full_ms);

  // Drop stale entries at the origin before writing the new ones.
  if (!rejoin) {
    if (node.home_prefix < ch_cache_.size()) ch_cache_[node.home_prefix].erase(node.id);
    if (*origin_zone != *dest_zone) gz_cache_[*origin_zone].erase(node.id);
  }
  node.home_prefix = destination.id;
  node.registered = true;
  const CacheEntry entry{node.id, node.home_prefix, node.position, destination.id, step};
  ch_cache_[destination.id][node.id] = entry;
  gz_cache_[*dest_zone][node.id] = entry;

  total_bytes_ += out.bytes;
  outcomes_.push_back(out);
  return out;
}

std::optional<CacheEntry> Registrar::lookup_cache(ZoneId gateway, NodeId node) const {
  if (gateway >= gz_cache_.size()) return std::nullopt;
  const auto it = gz_cache_[gateway].find(node);
  if (it == gz_cache_[gateway].end()) return std::nullopt;
  return it->second;
}

std::optional<CacheEntry> Registrar::lookup_ch_cache(ClusterId head, NodeId node) const {
  if (head >= ch_cache_.size()) return std::nullopt;
  const auto it = ch_cache_[head].find(node);
  if (it == ch_cache_[head].end()) return std::nullopt;
  return it->second;
}

std::size_t Registrar::count(RegistrationPath path) const {
  return static_cast<std::size_t>(
      std::count_if(outcomes_.begin(), outcomes_.end(), [&](const auto& o) { return o.path == path; }));
}

std::string Registrar::log_csv() const {
  std::string out = "step,node_id,path,hops,latency_ms,bytes\n";
  char line[128];
  for (const auto& o : outcomes_) {
    std::snprintf(line, sizeof line, "%llu,%u,%s,%zu,%.3f,%zu\n", static_cast<unsigned long long>(o.step), o.node,
                  to_string(o.path).c_str(), o.hops, o.latency_ms, o.bytes);
    out += line;
  }
  return out;
}

}  // namespace holesim
