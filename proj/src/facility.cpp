#include "hpcmodel/facility.hpp"

#include <stdexcept>
#include <string>

namespace hpcmodel::facility {

double pue(double total_energy, double it_energy) {
  if (it_energy <= 0.0) {
    throw std::invalid_argument("pue: IT energy must be positive");
  }
  if (total_energy < it_energy) {
    throw std::invalid_argument(
        "pue: facility energy below IT energy signals inconsistent metering (total " +
        std::to_string(total_energy) + " < it " + std::to_string(it_energy) + ")");
  }
  return total_energy / it_energy;
}

double pue(const EnergySample& sample) { return pue(sample.total_energy, sample.it_energy); }

PowerEnvelope it_power_envelope(const ClusterSpec& cluster, const EnvelopeOptions& options) {
  if (options.idle_fraction < 0.0 || options.idle_fraction > 1.0) {
    throw std::invalid_argument("it_power_envelope: idle fraction must lie in [0, 1]");
  }
  PowerEnvelope envelope;
  envelope.idle_fraction = options.idle_fraction;
  for (const auto& p : cluster.partitions) {
    PartitionPower power;
    power.partition = p.name;
    // Installed nodes idle at least at the wall, so CPU TDP counts them all;
    // accelerators in pilot partitions draw only for the populated subset.
    power.cpu_watts = static_cast<double>(p.node_count) * p.cpu.sockets_per_node *
                      p.cpu.tdp_watts_per_socket;
    for (const auto& group : p.accelerators) {
      const bool include = group.spec.kind == AcceleratorKind::gpu ? options.include_gpus
                                                                   : options.include_fpgas;
      if (!include) continue;
      power.accelerator_watts += static_cast<double>(p.effective_nodes()) * group.per_node *
                                 group.spec.tdp_watts;
    }
    envelope.upper_watts += power.total_watts();
    envelope.breakdown.push_back(std::move(power));
  }
  envelope.lower_watts = envelope.upper_watts * options.idle_fraction;
  return envelope;
}

HeadroomResult headroom(const ClusterSpec& cluster, const FacilitySpec& facility,
                        double assumed_pue, const EnvelopeOptions& options) {
  if (assumed_pue < 1.0) {
    throw std::invalid_argument("headroom: PUE below 1 is not physical");
  }
  if (facility.electrical_capacity_watts <= 0.0) {
    throw std::invalid_argument("headroom: electrical capacity must be positive");
  }
  HeadroomResult result;
  result.it_watts = it_power_envelope(cluster, options).upper_watts;
  result.assumed_pue = assumed_pue;
  result.required_watts = result.it_watts * assumed_pue;
  result.capacity_watts = facility.electrical_capacity_watts;
  result.fraction_of_capacity = result.required_watts / result.capacity_watts;
  result.fits = result.required_watts <= result.capacity_watts;
  return result;
}

}  // namespace hpcmodel::facility
