#include "isac/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Surface rect_surface(const std::string& id, const Vec3& c0, const Vec3& c1, const Vec3& c3,
                     double reflection, SurfaceKind kind, bool opaque) {
    Surface s;
    s.id = id;
    s.corners = {c0, c1, c0 + (c1 - c0) + (c3 - c0), c3};
    s.reflection_coeff = {reflection, 0.0};
    s.kind = kind;
    s.opaque = opaque;
    validate_surface(s);
    return s;
}

Anchor make_anchor(const Vec3& pos, const Vec3& boresight, AnchorRole role, double fov_deg) {
    Anchor a;
    a.position = pos;
    a.boresight = normalized(boresight);
    a.fov_half_angle_rad = fov_deg * kDeg;
    a.role = role;
    return a;
}

PointTarget default_target(const ScenarioParams& p, double z) {
    PointTarget t;
    t.position = {p.target_x_m, p.target_y_m, z};
    t.rcs_m2 = p.target_rcs_m2;
    if (p.target_speed_mps > 0.0) {
        const double h = p.target_heading_deg * kDeg;
        t.velocity_mps = {p.target_speed_mps * std::cos(h), p.target_speed_mps * std::sin(h), 0.0};
    }
    return t;
}

TestRegion region(double x0, double x1, double y0, double y1, double z,
                  const ScenarioParams& p) {
    TestRegion r;
    r.x0 = x0;
    r.x1 = x1;
    r.y0 = y0;
    r.y1 = y1;
    r.z = z;
    r.nx = p.grid_nx;
    r.ny = p.grid_ny;
    return r;
}

Scene indoor_scene(bool facing_pair, const ScenarioParams& p) {
    const double lx = p.room_length_m, ly = p.room_width_m, h = p.room_height_m;
    if (!(lx > 0.0) || !(ly > 0.0) || !(h > 0.0))
        throw std::invalid_argument("indoor scene: room dimensions must be positive");
    Scene s;
    const double g = p.wall_reflection;
    s.surfaces.push_back(rect_surface("wall_x0", {0, 0, 0}, {0, ly, 0}, {0, 0, h}, g,
                                      SurfaceKind::wall, true));
    s.surfaces.push_back(rect_surface("wall_x1", {lx, 0, 0}, {lx, ly, 0}, {lx, 0, h}, g,
                                      SurfaceKind::wall, true));
    s.surfaces.push_back(rect_surface("wall_y0", {0, 0, 0}, {lx, 0, 0}, {0, 0, h}, g,
                                      SurfaceKind::wall, true));
    s.surfaces.push_back(rect_surface("wall_y1", {0, ly, 0}, {lx, ly, 0}, {0, ly, h}, g,
                                      SurfaceKind::wall, true));
    const double ah = p.anchor_height_m;
    if (facing_pair) {
        // Centered on opposite walls, boresights meeting head-on.
        s.anchors.push_back(make_anchor({lx / 2.0, p.anchor_wall_offset_m, ah}, {0, 1, 0},
                                        AnchorRole::tx, p.fov_half_angle_deg));
        s.anchors.push_back(make_anchor({lx / 2.0, ly - p.anchor_wall_offset_m, ah}, {0, -1, 0},
                                        AnchorRole::rx, p.fov_half_angle_deg));
    } else {
        // Side by side on one wall, tilted 45 degrees toward each other.
        const double x_tx = (lx - p.anchor_separation_m) / 2.0;
        const double x_rx = (lx + p.anchor_separation_m) / 2.0;
        s.anchors.push_back(make_anchor({x_tx, p.anchor_wall_offset_m, ah},
                                        direction_from_angles(45.0 * kDeg, 0.0), AnchorRole::tx,
                                        p.fov_half_angle_deg));
        s.anchors.push_back(make_anchor({x_rx, p.anchor_wall_offset_m, ah},
                                        direction_from_angles(135.0 * kDeg, 0.0), AnchorRole::rx,
                                        p.fov_half_angle_deg));
    }
    s.tx_index = 0;
    s.rx_index = 1;
    s.test_region = region(0.0, lx, 0.0, ly, ah, p);
    s.targets.push_back(default_target(p, ah));
    return s;
}

Scene urban_scene(const ScenarioParams& p) {
    const double near = p.street_half_width_m, far = p.block_extent_m;
    const double hb = p.building_height_m;
    if (!(far > near) || !(near > 0.0) || !(hb > 0.0))
        throw std::invalid_argument("urban scene: need block_extent > street_half_width > 0");
    Scene s;
    const double quads[4][4] = {
        {near, far, near, far},     // +x +y
        {-far, -near, near, far},   // -x +y
        {-far, -near, -far, -near}, // -x -y
        {near, far, -far, -near},   // +x -y
    };
    const char* names[4] = {"building_ne", "building_nw", "building_sw", "building_se"};
    for (int q = 0; q < 4; ++q) {
        const double x0 = quads[q][0], x1 = quads[q][1];
        const double y0 = quads[q][2], y1 = quads[q][3];
        const std::string base = names[q];
        s.surfaces.push_back(rect_surface(base + "_y0", {x0, y0, 0}, {x1, y0, 0}, {x0, y0, hb},
                                          p.building_reflection, SurfaceKind::building_face, true));
        s.surfaces.push_back(rect_surface(base + "_y1", {x0, y1, 0}, {x1, y1, 0}, {x0, y1, hb},
                                          p.building_reflection, SurfaceKind::building_face, true));
        s.surfaces.push_back(rect_surface(base + "_x0", {x0, y0, 0}, {x0, y1, 0}, {x0, y0, hb},
                                          p.building_reflection, SurfaceKind::building_face, true));
        s.surfaces.push_back(rect_surface(base + "_x1", {x1, y0, 0}, {x1, y1, 0}, {x1, y0, hb},
                                          p.building_reflection, SurfaceKind::building_face, true));
    }
    // The ground reflects but never blocks (everything sits above it).
    s.surfaces.push_back(rect_surface("ground", {-far, -far, 0}, {far, -far, 0}, {-far, far, 0},
                                      p.ground_reflection, SurfaceKind::ground, false));
    // UE on the west road arm looking down the street; BS on the SE corner
    // rooftop looking at the intersection center at street level.
    const Vec3 ue{-(near + 15.0), 0.0, 1.5};
    const Vec3 bs{near, -near, hb + 1.0};
    s.anchors.push_back(make_anchor(ue, {1, 0, 0}, AnchorRole::tx, p.fov_half_angle_deg));
    s.anchors.push_back(
        make_anchor(bs, Vec3{0.0, 0.0, 1.5} - bs, AnchorRole::rx, p.fov_half_angle_deg));
    s.tx_index = 0;
    s.rx_index = 1;
    s.test_region = region(-30.0, 30.0, -30.0, 30.0, 1.5, p);
    s.targets.push_back(default_target(p, 1.5));
    return s;
}

Scene rural_scene(const ScenarioParams& p) {
    Scene s;
    const Vec3 bs{0.0, -80.0, 15.0};
    s.anchors.push_back(
        make_anchor(bs, Vec3{0.0, 0.0, 1.0} - bs, AnchorRole::monostatic, p.fov_half_angle_deg));
    s.tx_index = 0;
    s.rx_index = 0;
    s.test_region = region(-100.0, 100.0, -10.0, 10.0, 1.0, p);
    s.targets.push_back(default_target(p, 1.0));
    return s;
}

}  // namespace

ScenarioId scenario_from_name(const std::string& name) {
    if (name == "indoor_1") return ScenarioId::indoor_1;
    if (name == "indoor_2") return ScenarioId::indoor_2;
    if (name == "urban_intersection") return ScenarioId::urban_intersection;
    if (name == "rural_highway") return ScenarioId::rural_highway;
    if (name == "custom") return ScenarioId::custom;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string scenario_name(ScenarioId id) {
    switch (id) {
        case ScenarioId::indoor_1: return "indoor_1";
        case ScenarioId::indoor_2: return "indoor_2";
        case ScenarioId::urban_intersection: return "urban_intersection";
        case ScenarioId::rural_highway: return "rural_highway";
        case ScenarioId::custom: return "custom";
    }
    return "unknown";
}

ScenarioParams ScenarioParams::defaults_for(ScenarioId id) {
    ScenarioParams p;
    switch (id) {
        case ScenarioId::indoor_1:
        case ScenarioId::indoor_2:
            p.target_x_m = p.room_length_m / 2.0;
            p.target_y_m = p.room_width_m / 2.0;
            break;
        case ScenarioId::urban_intersection:
            p.target_x_m = 5.0;
            p.target_y_m = 5.0;
            p.target_speed_mps = 15.0;
            p.target_heading_deg = 0.0;
            break;
        case ScenarioId::rural_highway:
        case ScenarioId::custom:
            p.target_x_m = 0.0;
            p.target_y_m = 0.0;
            break;
    }
    return p;
}

Scene make_scene(ScenarioId id, const ScenarioParams& p) {
    switch (id) {
        case ScenarioId::indoor_1: return indoor_scene(false, p);
        case ScenarioId::indoor_2: return indoor_scene(true, p);
        case ScenarioId::urban_intersection: return urban_scene(p);
        case ScenarioId::rural_highway: return rural_scene(p);
        case ScenarioId::custom:
            throw std::invalid_argument("make_scene: custom scenes need make_custom_scene");
    }
    throw std::invalid_argument("make_scene: unknown scenario");
}

Scene make_custom_scene(const CustomSceneParams& c, const ScenarioParams& common) {
    Scene s;
    const Vec3 tx_bore =
        direction_from_angles(c.tx_boresight_az_deg * kDeg, c.tx_boresight_el_deg * kDeg);
    if (c.monostatic) {
        s.anchors.push_back(
            make_anchor(c.tx_position, tx_bore, AnchorRole::monostatic, common.fov_half_angle_deg));
        s.tx_index = 0;
        s.rx_index = 0;
    } else {
        const Vec3 rx_bore =
            direction_from_angles(c.rx_boresight_az_deg * kDeg, c.rx_boresight_el_deg * kDeg);
        s.anchors.push_back(
            make_anchor(c.tx_position, tx_bore, AnchorRole::tx, common.fov_half_angle_deg));
        s.anchors.push_back(
            make_anchor(c.rx_position, rx_bore, AnchorRole::rx, common.fov_half_angle_deg));
        s.tx_index = 0;
        s.rx_index = 1;
    }
    if (!(c.region_x1_m > c.region_x0_m) || !(c.region_y1_m > c.region_y0_m))
        throw std::invalid_argument("custom scene: test region must have positive area");
    s.test_region = region(c.region_x0_m, c.region_x1_m, c.region_y0_m, c.region_y1_m,
                           c.region_z_m, common);
    s.targets.push_back(default_target(common, c.region_z_m));
    return s;
}

}  // namespace isac
