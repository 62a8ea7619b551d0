#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "isac/geometry.hpp"

using namespace isac;

namespace {

Surface make_rect(const Vec3& c0, const Vec3& e1, const Vec3& e2, const std::string& id = "s") {
    Surface s;
    s.id = id;
    s.corners = {c0, c0 + e1, c0 + e1 + e2, c0 + e2};
    s.reflection_coeff = {0.7, 0.0};
    return s;
}

}  // namespace

TEST_CASE("vec3 basics") {
    const Vec3 a{1, 2, 3}, b{4, 5, 6};
    CHECK(dot(a, b) == doctest::Approx(32.0));
    const Vec3 c = cross(Vec3{1, 0, 0}, Vec3{0, 1, 0});
    CHECK(c == Vec3{0, 0, 1});
    CHECK(norm(Vec3{3, 4, 0}) == doctest::Approx(5.0));
    const Vec3 d = direction_from_angles(0.0, 0.0);
    CHECK(d == Vec3{1, 0, 0});
    const Vec3 up = direction_from_angles(0.3, M_PI / 2);
    CHECK(up.z == doctest::Approx(1.0));
    CHECK(norm(direction_from_angles(0.7, -0.2)) == doctest::Approx(1.0));
    const Vec3 r = rotate_z(Vec3{1, 0, 0}, M_PI / 2);
    CHECK(r.x == doctest::Approx(0.0));
    CHECK(r.y == doctest::Approx(1.0));
}

TEST_CASE("validate_surface accepts rectangles, rejects junk") {
    Surface ok = make_rect({0, 0, 0}, {2, 0, 0}, {0, 0, 3});
    CHECK_NOTHROW(validate_surface(ok));

    Surface bent = ok;
    bent.corners[2].y = 0.5;  // off-plane corner
    CHECK_THROWS_AS(validate_surface(bent), std::invalid_argument);

    Surface skew = ok;
    skew.corners[1] = {2, 0, 1};  // edges no longer perpendicular
    CHECK_THROWS_AS(validate_surface(skew), std::invalid_argument);

    Surface hot = ok;
    hot.reflection_coeff = {1.2, 0.0};  // gain from a passive reflector
    CHECK_THROWS_AS(validate_surface(hot), std::invalid_argument);
}

TEST_CASE("mirror_point is an involution on the plane's reflection") {
    const Surface s = make_rect({0, 1, 0}, {4, 0, 0}, {0, 0, 2});  // plane y = 1
    const Vec3 p{1.0, 3.0, 0.5};
    const Vec3 m = mirror_point(s, p);
    CHECK(m.x == doctest::Approx(1.0));
    CHECK(m.y == doctest::Approx(-1.0));  // reflected across y = 1
    CHECK(m.z == doctest::Approx(0.5));
    const Vec3 back = mirror_point(s, m);
    CHECK(norm(back - p) == doctest::Approx(0.0).epsilon(1e-12));
    // Points on the plane are fixed.
    const Vec3 onplane{2.0, 1.0, 1.0};
    CHECK(norm(mirror_point(s, onplane) - onplane) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("is_visible respects opaque flags and endpoints") {
    Scene scene;
    Surface wall = make_rect({5, -2, -2}, {0, 4, 0}, {0, 0, 4}, "wall");  // plane x = 5
    scene.surfaces.push_back(wall);

    CHECK_FALSE(is_visible(scene, {0, 0, 0}, {10, 0, 0}));  // crosses the wall
    CHECK(is_visible(scene, {0, 0, 0}, {4, 0, 0}));         // stops short
    CHECK(is_visible(scene, {0, 3, 0}, {10, 3, 0}));        // passes beside it
    CHECK(is_visible(scene, {0, 0, 0}, {5, 0, 0}));         // endpoint on the wall

    scene.surfaces[0].opaque = false;  // e.g. a reflective ground plane
    CHECK(is_visible(scene, {0, 0, 0}, {10, 0, 0}));
}

TEST_CASE("in_fov boundary behavior") {
    Anchor a;
    a.position = {0, 0, 0};
    a.boresight = {1, 0, 0};
    a.fov_half_angle_rad = M_PI / 4;
    CHECK(in_fov(a, {1, 0, 0}));
    CHECK(in_fov(a, {1, 0.999, 0}));       // just inside 45 degrees
    CHECK_FALSE(in_fov(a, {1, 1.001, 0})); // just outside
    CHECK_FALSE(in_fov(a, {-1, 0, 0}));
}

TEST_CASE("first_order_reflections follows the image method") {
    Scene scene;
    scene.surfaces.push_back(make_rect({-10, 2, -5}, {20, 0, 0}, {0, 0, 10}, "mirror"));  // y = 2
    Anchor tx, rx;
    tx.position = {-3, 0, 0};
    rx.position = {3, 0, 0};
    tx.boresight = normalized(Vec3{1, 1, 0});
    rx.boresight = normalized(Vec3{-1, 1, 0});
    tx.fov_half_angle_rad = rx.fov_half_angle_rad = M_PI / 2;
    scene.anchors = {tx, rx};

    const auto refl = first_order_reflections(scene, tx, rx);
    REQUIRE(refl.size() == 1);
    CHECK(refl[0].surface_id == "mirror");
    // Image of tx across y=2 is (-3, 4, 0); path length = |image - rx|.
    const double expect = norm(Vec3{-3, 4, 0} - rx.position);
    CHECK(refl[0].path_length_m == doctest::Approx(expect).epsilon(1e-12));
    // Bounce point: on the plane, equal angles -> midpoint in x by symmetry.
    CHECK(refl[0].bounce_point.y == doctest::Approx(2.0));
    CHECK(refl[0].bounce_point.x == doctest::Approx(0.0));

    // Shrinking the surface so the bounce point misses it removes the path.
    scene.surfaces[0] = make_rect({1, 2, -5}, {9, 0, 0}, {0, 0, 10}, "offside");
    CHECK(first_order_reflections(scene, tx, rx).empty());
}

TEST_CASE("max_region_error is the center-to-corner distance") {
    TestRegion r;
    r.x0 = 0;
    r.x1 = 10;
    r.y0 = 0;
    r.y1 = 6;
    r.z = 1.0;
    CHECK(max_region_error_m(r) == doctest::Approx(std::sqrt(25.0 + 9.0)).epsilon(1e-12));
    CHECK(max_region_error_m(r) == doctest::Approx(5.830951894845301).epsilon(1e-12));
}

TEST_CASE("test region cell centers") {
    TestRegion r;
    r.x0 = 0;
    r.x1 = 10;
    r.y0 = -3;
    r.y1 = 3;
    r.nx = 5;
    r.ny = 3;
    CHECK(r.cell_x(0) == doctest::Approx(1.0));
    CHECK(r.cell_x(4) == doctest::Approx(9.0));
    CHECK(r.cell_y(1) == doctest::Approx(0.0));
}
