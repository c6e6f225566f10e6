#include "holesim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <sstream>

#include "holesim/coverage.hpp"
#include "holesim/error.hpp"
#include "holesim/rng.hpp"

namespace holesim {

std::string to_string(Protocol p) { return p == Protocol::hybrid ? "hybrid" : "ssoa"; }

Protocol protocol_from_string(const std::string& name) {
  if (name == "hybrid") return Protocol::hybrid;
  if (name == "ssoa") return Protocol::ssoa;
  throw ConfigError("unknown protocol '" + name + "' (expected hybrid or ssoa)");
}

std::string to_string(HolePlacement p) {
  return p == HolePlacement::uniform_in_test_cluster ? "uniform_in_test_cluster" : "concentrated";
}

HolePlacement placement_from_string(const std::string& name) {
  if (name == "uniform_in_test_cluster" || name == "uniform") return HolePlacement::uniform_in_test_cluster;
  if (name == "concentrated") return HolePlacement::concentrated;
  throw ConfigError("unknown hole placement '" + name + "'");
}

std::string to_string(SweepAxis axis) { return axis == SweepAxis::holes ? "holes" : "density"; }

namespace {

std::size_t cluster_share(const LayoutParams& l, std::size_t index) {
  const std::size_t base = l.nodes_per_zone / l.clusters_per_zone;
  return base + (index < l.nodes_per_zone % l.clusters_per_zone ? 1 : 0);
}

void add_violation(std::vector<Violation>& out, Violation::Kind kind, std::string message) {
  out.push_back({kind, std::move(message)});
}

class Fingerprint {
public:
  template <typename T>
  Fingerprint& add(const T& value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (unsigned char b : bytes) {
      hash_ ^= b;
      hash_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  std::uint64_t value() const { return hash_; }

private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::uint64_t scenario_fingerprint(const Scenario& s, const std::vector<NodeId>& killed) {
  Fingerprint f;
  const FieldConfig& c = s.field;
  f.add(c.field_width).add(c.field_height).add(c.sensing_radius).add(c.transmission_range);
  f.add(c.grid_cell_size).add(c.packet_size).add(c.initial_energy).add(c.tx_power).add(c.rng_seed);
  f.add(static_cast<int>(c.coverage_mode));
  const LayoutParams& l = s.layout;
  f.add(l.zones_x).add(l.zones_y).add(l.clusters_per_zone).add(l.nodes_per_zone).add(l.phi_min).add(l.phi_max);
  f.add(l.test_zone).add(l.test_cluster);
  f.add(s.holes_to_inject).add(static_cast<int>(s.placement)).add(s.max_steps);
  for (NodeId id : killed) f.add(id);
  return f.value();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_axis(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::size_t live_total(const Field& field) {
  std::size_t n = 0;
  for (const auto& node : field.nodes) n += node.alive ? 1 : 0;
  return n;
}

void drop_dead_members(Field& field) {
  for (auto& c : field.clusters)
    c.members.erase(std::remove_if(c.members.begin(), c.members.end(),
                                   [&](NodeId id) { return !field.nodes[id].alive; }),
                    c.members.end());
}

// Charges one step of sensing to every live node. Returns true if any node died.
bool charge_sensing(Field& field, EnergyLedger& ledger, double joules) {
  bool died = false;
  for (auto& n : field.nodes)
    if (n.alive && ledger.charge(n, joules, EnergyCategory::sensing)) died = true;
  return died;
}

// Cells of the test region that were covered before the holes were injected.
std::vector<std::uint8_t> monitored_cells(const Field& field, const Rect& region) {
  const CoverageMap shape = initialize_grid(field.config);
  const CoverageMap before = mark_covered(shape, field.nodes, field.config.sensing_radius, CoverageMode::disk);
  std::vector<std::uint8_t> mask = region_mask(shape, region);
  for (int j = 0; j < shape.height_cells(); ++j)
    for (int i = 0; i < shape.width_cells(); ++i)
      if (!before.covered(i, j)) mask[static_cast<std::size_t>(j) * shape.width_cells() + i] = 0;
  return mask;
}

double region_coverage(const Field& field, const Rect& region) {
  const CoverageMap map = mark_covered(initialize_grid(field.config), field.nodes, field.config.sensing_radius,
                                       field.config.coverage_mode);
  return coverage_fraction(map, region);
}

// Live member of `source` closest to `target`'s region, skipping nodes already in transit.
std::optional<std::size_t> pick_migrant(const Field& field, const Cluster& source, const Cluster& target,
                                        const std::vector<NodeId>& busy, bool nearest) {
  std::optional<std::size_t> best;
  double best_d = 0.0;
  for (std::size_t k = 0; k < source.members.size(); ++k) {
    const NodeId id = source.members[k];
    if (!field.nodes[id].alive || std::find(busy.begin(), busy.end(), id) != busy.end()) continue;
    if (!nearest) return k;
    const double d = target.region.distance_to(field.nodes[id].position);
    if (!best || d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

std::optional<Position> nearest_hole_cell(const CoverageMap& shape, const HoleSet& holes, Position p) {
  std::optional<Position> best;
  double best_d = 0.0;
  for (const auto& cell : holes.cells) {
    const Position c = shape.cell_center(cell.i, cell.j);
    const double d = distance(p, c);
    if (!best || d < best_d) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

struct Migrant {
  NodeId id;
  ClusterId dest;
  std::size_t ready_step;  // registration completes at the end of this step
};

void run_hybrid(const Scenario& sc, Field& field, ClusterId test, std::span<const std::uint8_t> mask,
                EnergyLedger& ledger, RunReport& report) {
  HybridParams hp = sc.hybrid;
  hp.joules_per_meter = sc.energy.joules_per_meter;
  hp.max_iterations = std::max<std::size_t>(1, sc.max_steps);
  TraceSink sink;
  if (sc.trace) {
    report.trace_log = "iteration,node_id,x,y,holes_remaining\n";
    sink = [&report](const TraceRow& r) {
      report.trace_log += std::to_string(r.iteration) + "," + std::to_string(r.node) + "," + fmt(r.x) + "," +
                          fmt(r.y) + "," + std::to_string(r.holes_remaining) + "\n";
    };
  }
  HybridRecovery rec(field, test, hp, &ledger, sink, mask);
  Registrar registrar(field.clusters, field.zones, sc.protocol_params);
  const ZoneGraph graph = adjacent_zones(field.zones);
  const CoverageMap shape = initialize_grid(field.config);
  const double register_tx =
      transmission_energy(static_cast<double>(sc.protocol_params.register_bytes), field.config.tx_power,
                          sc.energy.bitrate);

  std::vector<Migrant> migrants;
  std::vector<std::size_t> gateway_free(field.zones.size(), 0);
  report.migration_log = "step,sensor_id,from,to\n";
  report.holes_per_step.push_back(rec.holes());

  std::size_t t = 0;
  while (rec.holes() > 0 && t < sc.max_steps) {
    ++t;
    const std::size_t holes_before = rec.holes();
    const std::size_t live_before = live_total(field);

    if (charge_sensing(field, ledger, sc.energy.sensing_per_step)) rec.refresh();

    // Network side: hole detection and load decisions run at the CHs and gateways.
    const Cluster& tc = field.clusters[test];
    ledger.add_network_cost(computational_cost(sc.energy.cost, 16.0 * static_cast<double>(tc.members.size()) + 1.0,
                                               sc.energy.processing_rate, sc.energy.bandwidth, 1.0));

    const MigrationPlan plan =
        manage_cluster_load(field.clusters, sc.layout.phi_min, sc.layout.phi_max, &graph);
    std::vector<NodeId> busy;
    for (const auto& m : migrants) busy.push_back(m.id);
    for (const auto& move : plan.moves) {
      Cluster& src = field.clusters[move.source];
      Cluster& dst = field.clusters[move.target];
      const auto pick = pick_migrant(field, src, dst, busy, sc.layout.nearest_to_border);
      if (!pick) continue;
      const NodeId id = src.members[*pick];
      SensorNode& node = field.nodes[id];
      RegistrationOutcome outcome;
      try {
        outcome = registrar.register_node(node, dst, t);
      } catch (const AdmissionDeferred&) {
        continue;
      }
      move_sensor(src, dst, *pick);
      ledger.charge(node, register_tx, EnergyCategory::transmission);
      ledger.add_network_cost(computational_cost(sc.energy.cost, static_cast<double>(outcome.bytes),
                                                 sc.energy.processing_rate, sc.energy.bandwidth, 1.0));
      const ZoneId gz = dst.zone;
      const std::size_t start = std::max(t, gateway_free[gz]);
      const auto steps =
          std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(outcome.latency_ms / sc.step_ms - 1e-12)));
      gateway_free[gz] = start + steps;
      migrants.push_back({id, dst.id, start + steps - 1});
      busy.push_back(id);
      report.migration_log += std::to_string(t) + "," + std::to_string(id) + "," + std::to_string(move.source) +
                              "," + std::to_string(move.target) + "\n";
    }

    // Registered migrants travel; the test cluster's local repair waits while any of its
    // incoming registrations is still in the handshake.
    bool pending = false;
    HoleSet holes;
    bool holes_ready = false;
    std::vector<Migrant> still;
    for (const auto& m : migrants) {
      SensorNode& node = field.nodes[m.id];
      if (!node.alive) continue;
      if (m.ready_step >= t) {
        pending = pending || m.dest == test;
        still.push_back(m);
        continue;
      }
      const Cluster& dst = field.clusters[m.dest];
      Position target = dst.head_position;
      if (m.dest == test && rec.holes() > 0) {
        if (!holes_ready) {
          holes = rec.hole_set();
          holes_ready = true;
        }
        if (auto h = nearest_hole_cell(shape, holes, node.position)) target = *h;
      }
      const double moved = rec.move_node(m.id, target);
      const bool inside = dst.region.contains(node.position);
      const bool done = m.dest == test ? (inside && (moved == 0.0 || rec.holes() == 0)) : inside;
      if (!done && node.alive) still.push_back(m);
    }
    migrants = std::move(still);

    if (!pending && rec.holes() > 0) {
      std::vector<NodeId> skip;
      for (const auto& m : migrants) skip.push_back(m.id);
      rec.iterate(skip);
    }

    drop_dead_members(field);
    const bool deaths = live_total(field) < live_before;
    if (deaths) rec.refresh();
    if (rec.holes() > holes_before && !deaths)
      throw InvariantViolation("hole count rose from " + std::to_string(holes_before) + " to " +
                               std::to_string(rec.holes()) + " at step " + std::to_string(t));
    report.holes_per_step.push_back(rec.holes());
  }

  ScenarioMetrics& m = report.metrics;
  m.recovered = rec.holes() == 0;
  m.recovery_time_steps = m.recovered ? t : sc.max_steps;
  m.residual_hole_cells = rec.holes();
  m.mean_distance_moved = rec.result().mean_distance_per_mover();
  m.registrations_intra = registrar.count(RegistrationPath::intra_zone);
  m.registrations_inter = registrar.count(RegistrationPath::inter_zone);
  m.protocol_bytes = registrar.total_bytes();
  report.registration_log = registrar.log_csv();
}

void run_ssoa(const Scenario& sc, Field& field, ClusterId test, std::span<const std::uint8_t> mask,
              EnergyLedger& ledger, RunReport& report) {
  SsoaParams p = sc.ssoa;
  p.joules_per_meter = sc.energy.joules_per_meter;
  p.cost = sc.energy.cost;
  p.processing_rate = sc.energy.processing_rate;
  p.bandwidth = sc.energy.bandwidth;
  p.cost_to_joule = sc.energy.cost_to_joule;
  p.neighbor_entry_bytes = field.config.packet_size;
  p.step_length = sc.hybrid.step_length;
  p.forces = sc.forces;

  const SsoaResult r = ssoa_recover(field, test, p, ledger, sc.max_steps, mask);
  for (std::size_t s = 0; s < r.steps_used; ++s) charge_sensing(field, ledger, sc.energy.sensing_per_step);
  drop_dead_members(field);

  report.holes_per_step = r.recovery.holes_per_iteration;
  ScenarioMetrics& m = report.metrics;
  m.recovered = r.recovery.recovered;
  m.recovery_time_steps = m.recovered ? r.steps_used : sc.max_steps;
  m.residual_hole_cells = r.recovery.residual_holes;
  m.mean_distance_moved = r.recovery.mean_distance_per_mover();
  report.registration_log = "step,node_id,path,hops,latency_ms,bytes\n";
  report.migration_log = "step,sensor_id,from,to\n";
  if (sc.trace) report.trace_log = "iteration,node_id,x,y,holes_remaining\n";
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out = validate_config(s.field);
  using K = Violation::Kind;
  const LayoutParams& l = s.layout;
  if (l.zones_x < 1 || l.zones_y < 1) add_violation(out, K::config, "layout: zones_x and zones_y must be >= 1");
  if (l.clusters_per_zone < 1) add_violation(out, K::config, "layout: clusters_per_zone must be >= 1");
  if (l.phi_min >= l.phi_max) add_violation(out, K::thresholds, "layout: phi_min must be below phi_max");
  if (l.test_zone >= l.zones_x * l.zones_y) add_violation(out, K::config, "layout: test_zone out of range");
  if (l.test_cluster >= l.clusters_per_zone) add_violation(out, K::config, "layout: test_cluster out of range");
  if (l.clusters_per_zone >= 1 && l.nodes_per_zone < l.clusters_per_zone)
    add_violation(out, K::config, "layout: nodes_per_zone must give every cluster at least one node");
  if (l.clusters_per_zone >= 1 && l.test_cluster < l.clusters_per_zone &&
      s.holes_to_inject > cluster_share(l, l.test_cluster))
    add_violation(out, K::config, "scenario: holes_to_inject exceeds the test cluster's live nodes");
  if (s.max_steps < 1) add_violation(out, K::config, "scenario: max_steps must be >= 1");
  if (!(s.step_ms > 0.0)) add_violation(out, K::config, "scenario: step_ms must be positive");
  if (!(s.hybrid.step_length > 0.0)) add_violation(out, K::velocity, "relocation: step_length must be positive");
  if (!(s.forces.d_threshold > 0.0)) add_violation(out, K::config, "relocation: d_threshold must be positive");
  if (!(s.forces.neighbor_range > 0.0)) add_violation(out, K::config, "relocation: neighbor_range must be positive");
  if (!(s.forces.gain > 0.0)) add_violation(out, K::config, "relocation: gain must be positive");
  if (s.forces.k_att < 0.0 || s.forces.k_rep < 0.0 || s.forces.k_b < 0.0)
    add_violation(out, K::config, "relocation: force constants must be non-negative");
  const EnergyParams& e = s.energy;
  if (!(e.bitrate > 0.0)) add_violation(out, K::energy, "energy: bitrate must be positive");
  if (e.joules_per_meter < 0.0) add_violation(out, K::energy, "energy: joules_per_meter must be non-negative");
  if (e.sensing_per_step < 0.0) add_violation(out, K::energy, "energy: sensing_per_step must be non-negative");
  if (!(e.processing_rate > 0.0)) add_violation(out, K::energy, "energy: processing_rate must be positive");
  if (!(e.bandwidth > 0.0)) add_violation(out, K::energy, "energy: bandwidth must be positive");
  if (e.cost_to_joule < 0.0) add_violation(out, K::energy, "energy: cost_to_joule must be non-negative");
  const ProtocolParams& p = s.protocol_params;
  if (!(p.link_latency_ms > 0.0) || !(p.auth_fast_ms > 0.0) || !(p.auth_full_ms > 0.0))
    add_violation(out, K::config, "protocol: latencies must be positive");
  if (p.auth_fast_ms > p.auth_full_ms)
    add_violation(out, K::config, "protocol: auth_fast_ms must not exceed auth_full_ms");
  return out;
}

ClusterId test_cluster_id(const Scenario& s) {
  return static_cast<ClusterId>(s.layout.test_zone * s.layout.clusters_per_zone + s.layout.test_cluster);
}

Field build_field(const Scenario& s) {
  const auto violations = validate_scenario(s);
  if (!violations.empty()) throw ConfigError(violations.front().message);
  const LayoutParams& l = s.layout;
  Field field;
  field.config = s.field;
  const double zw = s.field.field_width / static_cast<double>(l.zones_x);
  const double zh = s.field.field_height / static_cast<double>(l.zones_y);
  for (std::size_t zy = 0; zy < l.zones_y; ++zy) {
    for (std::size_t zx = 0; zx < l.zones_x; ++zx) {
      Zone zone;
      zone.id = static_cast<ZoneId>(field.zones.size());
      zone.gateway_id = zone.id;
      zone.region = {zx * zw, zy * zh, (zx + 1) * zw, (zy + 1) * zh};
      const bool bands_along_y = zh >= zw;
      const double band = (bands_along_y ? zh : zw) / static_cast<double>(l.clusters_per_zone);
      for (std::size_t k = 0; k < l.clusters_per_zone; ++k) {
        Cluster c;
        c.id = static_cast<ClusterId>(field.clusters.size());
        c.zone = zone.id;
        c.region = bands_along_y ? Rect{zone.region.x0, zone.region.y0 + k * band, zone.region.x1,
                                        zone.region.y0 + (k + 1) * band}
                                 : Rect{zone.region.x0 + k * band, zone.region.y0, zone.region.x0 + (k + 1) * band,
                                        zone.region.y1};
        c.head_position = c.region.center();
        c.min_threshold = l.phi_min;
        c.max_threshold = l.phi_max;
        const auto pts = initial_deploy(cluster_share(l, k), c.region,
                                        splitmix64(s.field.rng_seed * 0x9e3779b97f4a7c15ULL + c.id), s.forces);
        for (const auto& p : pts) {
          SensorNode n;
          n.id = static_cast<NodeId>(field.nodes.size());
          n.position = p;
          n.energy = s.field.initial_energy;
          n.home_prefix = c.id;
          n.registered = true;
          c.members.push_back(n.id);
          field.nodes.push_back(n);
        }
        zone.clusters.push_back(c.id);
        field.clusters.push_back(std::move(c));
      }
      field.zones.push_back(std::move(zone));
    }
  }
  return field;
}

std::vector<NodeId> inject_holes(Field& field, ClusterId cluster, std::size_t count, HolePlacement placement,
                                 std::uint64_t seed) {
  if (cluster >= field.clusters.size()) throw DomainError("inject_holes: unknown cluster");
  Cluster& c = field.clusters[cluster];
  std::vector<NodeId> live;
  for (NodeId id : c.members)
    if (field.nodes[id].alive) live.push_back(id);
  if (count > live.size())
    throw DomainError("inject_holes: " + std::to_string(count) + " holes requested but the cluster has " +
                      std::to_string(live.size()) + " live nodes");
  if (count == 0) return {};

  Rng rng(seed);
  std::vector<NodeId> killed;
  if (placement == HolePlacement::uniform_in_test_cluster) {
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(live.size() - k));
      std::swap(live[k], live[j]);
      killed.push_back(live[k]);
    }
  } else {
    const Position center{rng.uniform(c.region.x0, c.region.x1), rng.uniform(c.region.y0, c.region.y1)};
    std::stable_sort(live.begin(), live.end(), [&](NodeId a, NodeId b) {
      return distance(field.nodes[a].position, center) < distance(field.nodes[b].position, center);
    });
    killed.assign(live.begin(), live.begin() + static_cast<std::ptrdiff_t>(count));
  }
  std::sort(killed.begin(), killed.end());
  for (NodeId id : killed) field.nodes[id].alive = false;
  c.members.erase(std::remove_if(c.members.begin(), c.members.end(),
                                 [&](NodeId id) { return !field.nodes[id].alive; }),
                  c.members.end());
  return killed;
}

RunReport run_scenario(const Scenario& sc) {
  const auto violations = validate_scenario(sc);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += " [" + to_string(v.kind) + "] " + v.message + ";";
    throw ConfigError(msg);
  }
  Field field = build_field(sc);
  const ClusterId test = test_cluster_id(sc);
  const Rect region = field.clusters[test].region;

  RunReport report;
  report.metrics.initial_coverage_fraction = region_coverage(field, region);
  const std::vector<std::uint8_t> mask = monitored_cells(field, region);
  EnergyLedger ledger(field.nodes);

  report.killed = inject_holes(field, test, sc.holes_to_inject, sc.placement, splitmix64(sc.seed() ^ 0x401e5ULL));
  report.fingerprint = scenario_fingerprint(sc, report.killed);
  const std::size_t dead_after_injection = report.killed.size();
  {
    CoverageCounter counter(initialize_grid(field.config), field.config.sensing_radius,
                            std::span<const std::uint8_t>(mask));
    for (const auto& n : field.nodes)
      if (n.alive) counter.add(n.position);
    report.metrics.hole_cells_after_injection = counter.holes();
  }

  if (sc.protocol == Protocol::hybrid)
    run_hybrid(sc, field, test, mask, ledger, report);
  else
    run_ssoa(sc, field, test, mask, ledger, report);

  ScenarioMetrics& m = report.metrics;
  m.final_coverage_fraction = region_coverage(field, region);
  double frac = 0.0;
  std::size_t members = 0;
  for (NodeId id : field.clusters[test].members) {
    if (!field.nodes[id].alive) continue;
    frac += ledger.spent(id) / ledger.initial(id);
    ++members;
  }
  m.mean_node_energy_spent_fraction = members == 0 ? 0.0 : frac / static_cast<double>(members);
  m.total_computational_cost = ledger.node_cost_total();
  m.network_computational_cost = ledger.network_cost();
  m.energy_deaths = field.nodes.size() - live_total(field) - dead_after_injection;
  report.ledger_csv = ledger.to_csv(field.nodes);
  return report;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis, const std::vector<double>& values,
                            const std::vector<Protocol>& protocols) {
  if (values.empty()) throw DomainError("sweep: values must not be empty");
  if (protocols.empty()) throw DomainError("sweep: protocols must not be empty");
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (!(v >= 0.0)) throw DomainError("sweep: axis values must be non-negative");
    Scenario s = base;
    s.field.rng_seed = base.field.rng_seed + k;
    const auto n = static_cast<std::size_t>(std::llround(v));
    if (axis == SweepAxis::holes)
      s.holes_to_inject = n;
    else
      s.layout.nodes_per_zone = n * s.layout.clusters_per_zone;
    for (Protocol p : protocols) {
      s.protocol = p;
      rows.push_back({p, v, s.field.rng_seed, run_scenario(s)});
    }
  }
  return rows;
}

std::string results_csv_header() {
  return "protocol,axis_value,seed,T_r,coverage,mean_dist_m,energy_frac,comp_cost,reg_intra,reg_inter";
}

std::string results_csv_row(Protocol protocol, double axis_value, std::uint64_t seed, const ScenarioMetrics& m) {
  return to_string(protocol) + "," + fmt_axis(axis_value) + "," + std::to_string(seed) + "," +
         std::to_string(m.recovery_time_steps) + "," + fmt(m.final_coverage_fraction) + "," +
         fmt(m.mean_distance_moved) + "," + fmt(m.mean_node_energy_spent_fraction) + "," +
         fmt(m.total_computational_cost) + "," + std::to_string(m.registrations_intra) + "," +
         std::to_string(m.registrations_inter);
}

std::string results_csv(const std::vector<SweepRow>& rows) {
  std::string out = results_csv_header() + "\n";
  for (const auto& r : rows) out += results_csv_row(r.protocol, r.axis_value, r.seed, r.report.metrics) + "\n";
  return out;
}

std::string summary_text(const Scenario& sc, const RunReport& r) {
  const ScenarioMetrics& m = r.metrics;
  std::ostringstream os;
  os << "protocol: " << to_string(sc.protocol) << "\n"
     << "seed: " << sc.seed() << "\n"
     << "holes_injected: " << r.killed.size() << "\n"
     << "hole_cells_after_injection: " << m.hole_cells_after_injection << "\n"
     << "recovered: " << (m.recovered ? "yes" : "no") << "\n"
     << "recovery_time_steps: " << m.recovery_time_steps << "\n"
     << "residual_hole_cells: " << m.residual_hole_cells << "\n"
     << "initial_coverage: " << fmt(m.initial_coverage_fraction) << "\n"
     << "final_coverage: " << fmt(m.final_coverage_fraction) << "\n"
     << "mean_distance_moved_m: " << fmt(m.mean_distance_moved) << "\n"
     << "mean_energy_spent_fraction: " << fmt(m.mean_node_energy_spent_fraction) << "\n"
     << "node_computational_cost: " << fmt(m.total_computational_cost) << "\n"
     << "network_computational_cost: " << fmt(m.network_computational_cost) << "\n"
     << "registrations_intra: " << m.registrations_intra << "\n"
     << "registrations_inter: " << m.registrations_inter << "\n"
     << "protocol_bytes: " << m.protocol_bytes << "\n"
     << "energy_deaths: " << m.energy_deaths << "\n"
     << "fingerprint: " << std::hex << r.fingerprint << std::dec << "\n";
  return os.str();
}

}  // namespace holesim
