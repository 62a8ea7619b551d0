#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "isac/vec3.hpp"

namespace isac {

enum class SurfaceKind { wall, ground, building_face };

/// Planar reflecting rectangle. Corners are listed in order around the
/// rectangle, so corners[1]-corners[0] and corners[3]-corners[0] are the two
/// edge directions and corners[2] is the opposite corner.
struct Surface {
    std::string id;
    std::array<Vec3, 4> corners{};
    std::complex<double> reflection_coeff{0.0, 0.0};  // |coeff| <= 1
    SurfaceKind kind = SurfaceKind::wall;
    bool opaque = true;  // participates in visibility blocking
};

/// Throws std::invalid_argument if the corners are not a planar rectangle
/// (coplanarity tolerance 1e-9 m) or |reflection_coeff| > 1.
void validate_surface(const Surface& s);

enum class AnchorRole { tx, rx, monostatic };

struct Anchor {
    Vec3 position;
    Vec3 boresight{1.0, 0.0, 0.0};    // unit vector
    int array_rows = 1;
    int array_cols = 1;
    double element_spacing_m = 0.0;   // 0 means half the carrier wavelength
    double fov_half_angle_rad = 0.0;  // in (0, pi]
    AnchorRole role = AnchorRole::tx;
};

struct PointTarget {
    Vec3 position;
    double rcs_m2 = 1.0;
    Vec3 velocity_mps{0.0, 0.0, 0.0};  // all-zero means static
};

/// Axis-aligned rectangular test region at a fixed height, gridded cell-centered.
struct TestRegion {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
    double z = 0.0;
    int nx = 2, ny = 2;  // grid resolution, >= 2 per axis

    double cell_x(int ix) const { return x0 + (ix + 0.5) * (x1 - x0) / nx; }
    double cell_y(int iy) const { return y0 + (iy + 0.5) * (y1 - y0) / ny; }
};

struct Scene {
    std::vector<Anchor> anchors;
    std::vector<Surface> surfaces;
    std::vector<PointTarget> targets;
    TestRegion test_region;

    int tx_index = 0;  // transmitting anchor
    int rx_index = 0;  // receiving anchor (== tx_index for monostatic)
};

/// True iff the open segment a-b crosses no opaque surface (endpoints excluded,
/// so a segment may start or end exactly on a surface). Symmetric in a and b.
bool is_visible(const Scene& scene, const Vec3& a, const Vec3& b);

/// True iff p lies within the anchor's field-of-view cone (boundary inclusive).
bool in_fov(const Anchor& anchor, const Vec3& p);

/// Reflection of p across the surface's infinite plane (an involution).
Vec3 mirror_point(const Surface& surface, const Vec3& p);

struct Reflection {
    std::string surface_id;
    int surface_index = -1;
    Vec3 bounce_point;
    double path_length_m = 0.0;
};

/// Single-bounce specular reflections between two anchors via the image
/// method: one entry per surface whose bounce point falls inside the surface
/// rectangle, with both legs unblocked (the reflecting surface itself never
/// blocks its own legs) and the bounce point inside both anchors' FoV cones.
std::vector<Reflection> first_order_reflections(const Scene& scene, const Anchor& tx,
                                                const Anchor& rx);

/// Distance from the region center to its furthest corner (both at region height).
double max_region_error_m(const TestRegion& region);

namespace detail {
/// Precomputed orthonormal frame of a Surface rectangle.
struct RectFrame {
    Vec3 origin, u, v, normal;  // u, v, normal unit vectors
    double u_len = 0.0, v_len = 0.0;
};
RectFrame rect_frame(const Surface& s);
bool segment_hits_rect(const Vec3& a, const Vec3& b, const RectFrame& r);
}  // namespace detail

}  // namespace isac
