#pragma once

#include <string>

#include "isac/geometry.hpp"

namespace isac {

enum class ScenarioId { indoor_1, indoor_2, urban_intersection, rural_highway, custom };

/// Throws std::invalid_argument on an unknown name.
ScenarioId scenario_from_name(const std::string& name);
std::string scenario_name(ScenarioId id);

/// Every geometric knob of the built-in scenarios, config-overridable.
/// Defaults depend on the scenario; obtain them via defaults_for().
struct ScenarioParams {
    // Indoor room (axis-aligned box, anchors on walls).
    double room_length_m = 10.0;       // x extent
    double room_width_m = 6.0;         // y extent
    double room_height_m = 3.0;
    double anchor_height_m = 1.5;
    double anchor_wall_offset_m = 0.5; // distance from the wall anchors sit on
    double anchor_separation_m = 5.5;  // indoor_1: Tx-Rx spacing along the wall
    double wall_reflection = 0.7;

    // Urban intersection (four quadrant buildings + ground plane).
    double street_half_width_m = 10.0; // building faces sit at +/- this
    double block_extent_m = 40.0;      // buildings and ground reach +/- this
    double building_height_m = 20.0;
    double building_reflection = 0.7;
    double ground_reflection = 0.6;

    // Common.
    double fov_half_angle_deg = 60.0;
    double target_rcs_m2 = 1.0;
    double target_speed_mps = 0.0;     // 0 = static (no Doppler gating)
    double target_heading_deg = 0.0;   // horizontal heading, 0 = +x
    double target_x_m = 0.0;           // default target; z = region height
    double target_y_m = 0.0;
    int grid_nx = 100;
    int grid_ny = 100;

    static ScenarioParams defaults_for(ScenarioId id);
};

/// Builds one of the built-in scenes (throws std::invalid_argument for
/// ScenarioId::custom — use make_custom_scene). scene.targets[0] is the
/// default target, which doubles as the probe template for map building.
///
///  - indoor_1: 4-wall room, both anchors on the y=0 wall (offset
///    anchor_wall_offset from it), separated by anchor_separation and
///    centered, boresights tilted 45 degrees toward each other.
///  - indoor_2: anchors centered on the two opposite long walls, facing.
///  - urban_intersection: four buildings filling the quadrants outside a
///    street cross, opaque reflective faces; non-blocking reflective ground;
///    UE transmitter at street level looking +x, elevated BS receiver on a
///    corner looking at the intersection center.
///  - rural_highway: one elevated monostatic anchor, no surfaces, road-strip
///    test region.
Scene make_scene(ScenarioId id, const ScenarioParams& p);

/// Fully user-specified two-anchor (or monostatic) scene without surfaces.
struct CustomSceneParams {
    Vec3 tx_position{0.0, 0.0, 1.5};
    double tx_boresight_az_deg = 0.0;
    double tx_boresight_el_deg = 0.0;
    Vec3 rx_position{10.0, 0.0, 1.5};
    double rx_boresight_az_deg = 180.0;
    double rx_boresight_el_deg = 0.0;
    bool monostatic = false;           // ignore rx_*: one anchor, role monostatic
    double region_x0_m = 0.0, region_x1_m = 10.0;
    double region_y0_m = -5.0, region_y1_m = 5.0;
    double region_z_m = 1.5;
};

Scene make_custom_scene(const CustomSceneParams& c, const ScenarioParams& common);

}  // namespace isac
