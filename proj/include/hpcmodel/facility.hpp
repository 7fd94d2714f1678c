#pragma once

#include <string>
#include <vector>

#include "hpcmodel/model.hpp"

namespace hpcmodel::facility {

// total / it energy over the same period; unit- and scale-invariant.
// Throws std::invalid_argument if it_energy <= 0 or total < it (inconsistent
// metering).
double pue(const EnergySample& sample);
double pue(double total_energy, double it_energy);

struct EnvelopeOptions {
  double idle_fraction = 0.3;  // lower bound as a fraction of the upper bound
  bool include_gpus = true;
  bool include_fpgas = true;

  bool operator==(const EnvelopeOptions&) const = default;
};

struct PartitionPower {
  std::string partition;
  double cpu_watts = 0.0;
  double accelerator_watts = 0.0;

  double total_watts() const { return cpu_watts + accelerator_watts; }

  bool operator==(const PartitionPower&) const = default;
};

// Nameplate IT power from TDP sums. CPU power counts every installed node;
// accelerator power counts active nodes (pilot partitions draw only for the
// populated subset).
struct PowerEnvelope {
  double upper_watts = 0.0;
  double lower_watts = 0.0;
  double idle_fraction = 0.0;
  std::vector<PartitionPower> breakdown;

  bool operator==(const PowerEnvelope&) const = default;
};

PowerEnvelope it_power_envelope(const ClusterSpec& cluster, const EnvelopeOptions& options = {});

struct HeadroomResult {
  double it_watts = 0.0;
  double assumed_pue = 0.0;
  double required_watts = 0.0;  // it_watts * assumed_pue
  double capacity_watts = 0.0;
  double fraction_of_capacity = 0.0;
  bool fits = false;

  bool operator==(const HeadroomResult&) const = default;
};

// Does the IT envelope, grossed up by the assumed PUE, fit the electrical
// capacity? Throws std::invalid_argument for PUE < 1 or nonpositive capacity.
HeadroomResult headroom(const ClusterSpec& cluster, const FacilitySpec& facility,
                        double assumed_pue, const EnvelopeOptions& options = {});

}  // namespace hpcmodel::facility
