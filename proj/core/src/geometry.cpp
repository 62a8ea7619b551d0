#include "isac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac {

namespace detail {

RectFrame rect_frame(const Surface& s) {
    RectFrame r;
    r.origin = s.corners[0];
    const Vec3 eu = s.corners[1] - s.corners[0];
    const Vec3 ev = s.corners[3] - s.corners[0];
    r.u_len = norm(eu);
    r.v_len = norm(ev);
    r.u = eu / r.u_len;
    r.v = ev / r.v_len;
    r.normal = normalized(cross(eu, ev));
    return r;
}

bool segment_hits_rect(const Vec3& a, const Vec3& b, const RectFrame& r) {
    constexpr double kEndpointEps = 1e-9;  // endpoints excluded
    constexpr double kEdgeEps = 1e-9;      // rectangle edges inclusive-ish
    const Vec3 d = b - a;
    const double dn = dot(d, r.normal);
    if (std::abs(dn) < 1e-14) return false;  // parallel to the plane
    const double t = dot(r.origin - a, r.normal) / dn;
    if (t <= kEndpointEps || t >= 1.0 - kEndpointEps) return false;
    const Vec3 p = a + t * d;
    const double s1 = dot(p - r.origin, r.u);
    const double s2 = dot(p - r.origin, r.v);
    return s1 >= -kEdgeEps && s1 <= r.u_len + kEdgeEps && s2 >= -kEdgeEps &&
           s2 <= r.v_len + kEdgeEps;
}

}  // namespace detail

void validate_surface(const Surface& s) {
    const Vec3 eu = s.corners[1] - s.corners[0];
    const Vec3 ev = s.corners[3] - s.corners[0];
    if (norm(eu) <= 0.0 || norm(ev) <= 0.0)
        throw std::invalid_argument("surface '" + s.id + "': degenerate rectangle edge");
    const Vec3 n = cross(eu, ev);
    if (norm(n) <= 0.0)
        throw std::invalid_argument("surface '" + s.id + "': collinear corners");
    const Vec3 nh = normalized(n);
    // corners[2] must close the parallelogram and lie in the plane.
    const Vec3 expected = s.corners[0] + eu + ev;
    if (norm(s.corners[2] - expected) > 1e-9)
        throw std::invalid_argument("surface '" + s.id + "': corners are not a planar rectangle");
    if (std::abs(dot(s.corners[2] - s.corners[0], nh)) > 1e-9)
        throw std::invalid_argument("surface '" + s.id + "': corners not coplanar");
    if (std::abs(dot(eu, ev)) > 1e-9 * norm(eu) * norm(ev))
        throw std::invalid_argument("surface '" + s.id + "': edges not perpendicular");
    if (std::abs(s.reflection_coeff) > 1.0 + 1e-12)
        throw std::invalid_argument("surface '" + s.id + "': |reflection_coeff| > 1");
}

bool is_visible(const Scene& scene, const Vec3& a, const Vec3& b) {
    for (const Surface& s : scene.surfaces) {
        if (!s.opaque) continue;
        if (detail::segment_hits_rect(a, b, detail::rect_frame(s))) return false;
    }
    return true;
}

bool in_fov(const Anchor& anchor, const Vec3& p) {
    const Vec3 d = p - anchor.position;
    const double nd = norm(d);
    if (nd < 1e-12) return false;
    const double c = std::clamp(dot(d, anchor.boresight) / nd, -1.0, 1.0);
    const double ang = std::acos(c);
    return ang <= anchor.fov_half_angle_rad + 1e-12;  // boundary inclusive
}

Vec3 mirror_point(const Surface& surface, const Vec3& p) {
    const detail::RectFrame r = detail::rect_frame(surface);
    return p - 2.0 * dot(p - r.origin, r.normal) * r.normal;
}

std::vector<Reflection> first_order_reflections(const Scene& scene, const Anchor& tx,
                                                const Anchor& rx) {
    std::vector<Reflection> out;
    std::vector<detail::RectFrame> frames;
    frames.reserve(scene.surfaces.size());
    for (const Surface& s : scene.surfaces) frames.push_back(detail::rect_frame(s));

    for (std::size_t si = 0; si < scene.surfaces.size(); ++si) {
        const Surface& s = scene.surfaces[si];
        const detail::RectFrame& r = frames[si];
        const Vec3 img = mirror_point(s, rx.position);
        const Vec3 d = img - tx.position;
        const double dn = dot(d, r.normal);
        if (std::abs(dn) < 1e-14) continue;
        const double t = dot(r.origin - tx.position, r.normal) / dn;
        if (t <= 1e-9 || t >= 1.0 - 1e-9) continue;
        const Vec3 bp = tx.position + t * d;
        const double s1 = dot(bp - r.origin, r.u);
        const double s2 = dot(bp - r.origin, r.v);
        if (s1 < 0.0 || s1 > r.u_len || s2 < 0.0 || s2 > r.v_len) continue;
        if (!in_fov(tx, bp) || !in_fov(rx, bp)) continue;
        // Both legs must be unblocked by every *other* opaque surface.
        bool blocked = false;
        for (std::size_t oi = 0; oi < scene.surfaces.size() && !blocked; ++oi) {
            if (oi == si || !scene.surfaces[oi].opaque) continue;
            blocked = detail::segment_hits_rect(tx.position, bp, frames[oi]) ||
                      detail::segment_hits_rect(bp, rx.position, frames[oi]);
        }
        if (blocked) continue;
        Reflection ref;
        ref.surface_id = s.id;
        ref.surface_index = static_cast<int>(si);
        ref.bounce_point = bp;
        ref.path_length_m = norm(bp - tx.position) + norm(rx.position - bp);
        out.push_back(std::move(ref));
    }
    return out;
}

double max_region_error_m(const TestRegion& region) {
    const double cx = 0.5 * (region.x0 + region.x1);
    const double cy = 0.5 * (region.y0 + region.y1);
    double best = 0.0;
    for (double x : {region.x0, region.x1})
        for (double y : {region.y0, region.y1})
            best = std::max(best, std::hypot(x - cx, y - cy));
    return best;
}

}  // namespace isac
