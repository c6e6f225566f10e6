#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holesim/error.hpp"
#include "holesim/world.hpp"

namespace holesim {

enum class MessageKind { id_req, req_ack, register_node, cache_update };

struct Entity {
  enum class Kind { node, cluster_head, gateway };
  Kind kind = Kind::node;
  std::uint32_t id = 0;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct ProtocolMessage {
  MessageKind kind;
  Entity from;
  Entity to;
  std::size_t payload_bytes = 0;
  bool includes_position = false;

  // ID_REQ and REQ_ACK travel between CH and Gz entities and are what `hops` counts.
  bool is_handshake() const { return kind == MessageKind::id_req || kind == MessageKind::req_ack; }
};

struct CacheEntry {
  NodeId node_id = 0;
  ClusterId home_prefix = 0;
  Position position;
  ClusterId owning_ch = 0;
  std::uint64_t timestamp = 0;

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

enum class RegistrationPath { intra_zone, inter_zone };
enum class AuthMode { fast, full };

struct RegistrationOutcome {
  NodeId node = 0;
  ClusterId from_cluster = 0;
  ClusterId to_cluster = 0;
  RegistrationPath path = RegistrationPath::intra_zone;
  std::vector<ProtocolMessage> messages;
  std::size_t hops = 0;
  double latency_ms = 0.0;
  AuthMode auth = AuthMode::fast;
  std::size_t bytes = 0;  // sum of payload_bytes over messages
  std::uint64_t step = 0;
};

struct ProtocolParams {
  double link_latency_ms = 2.0;
  double auth_fast_ms = 1.0;
  double auth_full_ms = 4.0;
  std::size_t handshake_bytes = 2048;  // ID_REQ / REQ_ACK payload
  std::size_t register_bytes = 2048;   // node's own announcement to the new CH
};

// The node's home prefix is not known at any reachable gateway.
class RegistrationRefused : public Error {
public:
  using Error::Error;
};

// The destination cluster is at its maximum; retry after the next balancing pass.
class AdmissionDeferred : public Error {
public:
  using Error::Error;
};

// hops * link latency + authentication time for the outcome's auth mode.
double registration_latency(const RegistrationOutcome& outcome, double link_latency_ms, double auth_fast_ms,
                            double auth_full_ms);

std::string to_string(MessageKind kind);
std::string to_string(RegistrationPath path);

// CH and Gz caches plus the registration handshake. One registration is processed at a time.
class Registrar {
public:
  Registrar(std::span<const Cluster> clusters, std::span<const Zone> zones, ProtocolParams params = {});

  // Registers `node` (currently homed at node.home_prefix) with `destination`. On success the node's
  // home prefix is rewritten, both caches are updated, and the outcome is recorded.
  RegistrationOutcome register_node(SensorNode& node, const Cluster& destination, std::uint64_t step);

  std::optional<CacheEntry> lookup_cache(ZoneId gateway, NodeId node) const;
  std::optional<CacheEntry> lookup_ch_cache(ClusterId head, NodeId node) const;

  const std::vector<RegistrationOutcome>& outcomes() const { return outcomes_; }
  std::size_t total_bytes() const { return total_bytes_; }
  std::size_t count(RegistrationPath path) const;
  const std::vector<std::vector<ZoneId>>& zone_neighbors() const { return neighbors_; }
  const ProtocolParams& params() const { return params_; }

  // One log line per registration: step,node_id,path,hops,latency_ms,bytes
  std::string log_csv() const;

private:
  std::optional<ZoneId> zone_of(ClusterId cluster) const;

  ProtocolParams params_;
  std::vector<std::optional<ZoneId>> cluster_zone_;
  std::vector<Zone> zones_;
  std::vector<std::vector<ZoneId>> neighbors_;
  std::vector<std::map<NodeId, CacheEntry>> ch_cache_;
  std::vector<std::map<NodeId, CacheEntry>> gz_cache_;
  std::vector<RegistrationOutcome> outcomes_;
  std::size_t total_bytes_ = 0;
};

// Zones whose rectangles share an edge segment.
std::vector<std::vector<ZoneId>> adjacent_zones(std::span<const Zone> zones);

}  // namespace holesim
