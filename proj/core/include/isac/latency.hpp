#pragma once

#include <string>
#include <vector>

namespace isac {

/// One processing tier a sensing workload can be placed on.
struct ProcessingNode {
    std::string name;
    double prop_latency_s = 0.0;     // one-way network propagation latency
    double link_rate_bps = 0.0;      // transport link rate, bits per second
    double compute_rate_flops = 0.0; // sustained compute rate, FLOP per second
};

/// Throws std::invalid_argument unless every rate/latency is positive.
void validate_node(const ProcessingNode& node);

/// The three default tiers: extreme_edge (0.015 ms, 0.1 Gbps, 10 GFLOP/s),
/// edge (0.15 ms, 1 Gbps, 100 GFLOP/s), core (0.8 ms, 10 Gbps, 300 GFLOP/s).
std::vector<ProcessingNode> default_nodes();

/// FLOP cost of a complex 2D FFT over an n_sc x m grid: 5 N log2(N) with
/// N = n_sc * m (separable-transform identity).
double fft2d_flops(int n_sc, int m);

/// Additive sensing-latency decomposition.
struct LatencyBreakdown {
    double t_tx_s = 0.0;        // frame (waveform transmission) duration
    double t_prop_air_s = 0.0;  // over-the-air propagation
    double t_transport_s = 0.0; // sensing-data transport, bits / link rate
    double t_prop_net_s = 0.0;  // network propagation to the processing node
    double t_compute_s = 0.0;   // processing, FLOP / compute rate
    double t_total_s = 0.0;     // sum of the five terms
};

/// Fills the decomposition for moving `data_volume_bits` of sensing data to
/// `node` and running a `load_flops` workload there.
LatencyBreakdown total_latency(double frame_s, double air_prop_s, double data_volume_bits,
                               double load_flops, const ProcessingNode& node);

struct PlacementChoice {
    int node_index = -1;
    LatencyBreakdown breakdown;
};

/// Node minimizing t_total for the given load/volume (frame and air terms are
/// placement-independent and excluded). Ties break toward smaller
/// prop_latency_s. Throws std::invalid_argument on an empty node list.
PlacementChoice best_placement(double load_flops, double data_volume_bits,
                               const std::vector<ProcessingNode>& nodes);

/// One contributing node of a distributed sensing pipeline.
struct DistributedShare {
    double data_volume_bits = 0.0;
    double load_flops = 0.0;
    ProcessingNode node;
};

/// Processing latency when shares run in parallel: the maximum over shares of
/// transport + network propagation + compute. Throws std::invalid_argument on
/// an empty share list.
double distributed_latency(const std::vector<DistributedShare>& shares);

/// Position error a target moving at `speed_mps` accrues over one sensing
/// latency: speed * t_total.
double motion_error_m(double speed_mps, double t_total_s);

/// One load point of a placement sweep.
struct PlacementRow {
    double load_flops = 0.0;
    std::vector<LatencyBreakdown> per_node; // aligned with the node list
    int best_node = -1;
    double motion_error_m = 0.0;            // at the best node's total latency
};

/// Evaluates loads lo, lo+step, ... up to and including hi (within half a
/// step) against every node, with frame and air terms set to zero.
std::vector<PlacementRow> placement_sweep(double lo_flops, double hi_flops, double step_flops,
                                          const std::vector<ProcessingNode>& nodes,
                                          double speed_mps, double data_volume_bits = 0.0);

}  // namespace isac
