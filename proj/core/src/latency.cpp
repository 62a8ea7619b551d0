#include "isac/latency.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

void validate_node(const ProcessingNode& node) {
    if (!(node.prop_latency_s > 0.0) || !(node.link_rate_bps > 0.0) ||
        !(node.compute_rate_flops > 0.0))
        throw std::invalid_argument("processing node '" + node.name +
                                    "': latency and rates must be positive");
}

std::vector<ProcessingNode> default_nodes() {
    return {
        {"extreme_edge", 0.015e-3, 0.1e9, 10e9},
        {"edge", 0.15e-3, 1e9, 100e9},
        {"core", 0.8e-3, 10e9, 300e9},
    };
}

double fft2d_flops(int n_sc, int m) {
    if (n_sc < 1 || m < 1) throw std::invalid_argument("fft2d_flops: sizes must be >= 1");
    const double n = static_cast<double>(n_sc) * m;
    return 5.0 * n * std::log2(n);
}

LatencyBreakdown total_latency(double frame_s, double air_prop_s, double data_volume_bits,
                               double load_flops, const ProcessingNode& node) {
    validate_node(node);
    if (load_flops < 0.0 || data_volume_bits < 0.0 || frame_s < 0.0 || air_prop_s < 0.0)
        throw std::invalid_argument("total_latency: negative input");
    LatencyBreakdown b;
    b.t_tx_s = frame_s;
    b.t_prop_air_s = air_prop_s;
    b.t_transport_s = data_volume_bits / node.link_rate_bps;
    b.t_prop_net_s = node.prop_latency_s;
    b.t_compute_s = load_flops / node.compute_rate_flops;
    b.t_total_s = b.t_tx_s + b.t_prop_air_s + b.t_transport_s + b.t_prop_net_s + b.t_compute_s;
    return b;
}

PlacementChoice best_placement(double load_flops, double data_volume_bits,
                               const std::vector<ProcessingNode>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("best_placement: no nodes");
    PlacementChoice best;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const LatencyBreakdown b = total_latency(0.0, 0.0, data_volume_bits, load_flops, nodes[i]);
        const bool better =
            best.node_index < 0 || b.t_total_s < best.breakdown.t_total_s ||
            (b.t_total_s == best.breakdown.t_total_s &&
             nodes[i].prop_latency_s < nodes[best.node_index].prop_latency_s);
        if (better) {
            best.node_index = static_cast<int>(i);
            best.breakdown = b;
        }
    }
    return best;
}

double distributed_latency(const std::vector<DistributedShare>& shares) {
    if (shares.empty()) throw std::invalid_argument("distributed_latency: no shares");
    double worst = 0.0;
    for (const DistributedShare& s : shares) {
        const LatencyBreakdown b =
            total_latency(0.0, 0.0, s.data_volume_bits, s.load_flops, s.node);
        const double proc = b.t_transport_s + b.t_prop_net_s + b.t_compute_s;
        worst = std::max(worst, proc);
    }
    return worst;
}

double motion_error_m(double speed_mps, double t_total_s) {
    if (speed_mps < 0.0) throw std::invalid_argument("motion_error_m: negative speed");
    return speed_mps * t_total_s;
}

std::vector<PlacementRow> placement_sweep(double lo_flops, double hi_flops, double step_flops,
                                          const std::vector<ProcessingNode>& nodes,
                                          double speed_mps, double data_volume_bits) {
    if (nodes.empty()) throw std::invalid_argument("placement_sweep: no nodes");
    if (!(step_flops > 0.0)) throw std::invalid_argument("placement_sweep: step must be positive");
    if (hi_flops < lo_flops) throw std::invalid_argument("placement_sweep: empty load range");
    std::vector<PlacementRow> out;
    const int n_steps = static_cast<int>(std::floor((hi_flops - lo_flops) / step_flops + 0.5));
    out.reserve(static_cast<std::size_t>(n_steps) + 1);
    for (int k = 0; k <= n_steps; ++k) {
        PlacementRow row;
        row.load_flops = lo_flops + k * step_flops;
        row.per_node.reserve(nodes.size());
        for (const ProcessingNode& node : nodes)
            row.per_node.push_back(
                total_latency(0.0, 0.0, data_volume_bits, row.load_flops, node));
        row.best_node = best_placement(row.load_flops, data_volume_bits, nodes).node_index;
        row.motion_error_m = motion_error_m(speed_mps, row.per_node[row.best_node].t_total_s);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace isac
