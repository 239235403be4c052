#pragma once

#include <array>
#include <cmath>

#include "vs360/image.hpp"

namespace vs360 {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? *this * (1.0 / n) : Vec3{1.0, 0.0, 0.0};
    }
};

// Latitude/longitude in radians. lat in [-pi/2, +pi/2], lon in [-pi, +pi).
// Construct through make_spherical so the ranges always hold: longitude is
// wrapped, an out-of-range latitude is a caller bug and throws.
struct SphericalPoint {
    double lat = 0.0;
    double lon = 0.0;
};

SphericalPoint make_spherical(double lat, double lon);
double wrap_longitude(double lon);

// z points at the north pole, x at (lat 0, lon 0).
Vec3 to_unit_vector(const SphericalPoint& p);
SphericalPoint to_spherical(const Vec3& v);

// Pixel-center convention throughout: integer pixel (px, py) sits at
// lon = ((px+0.5)/W)*2pi - pi, lat = pi/2 - ((py+0.5)/H)*pi.
SphericalPoint erp_to_spherical(int px, int py, int width, int height);

// Fractional-pixel inverse; px is wrapped into [-0.5, width-0.5).
struct ErpCoord {
    double px = 0.0;
    double py = 0.0;
};
ErpCoord spherical_to_erp(const SphericalPoint& p, int width, int height);

// Central angle in [0, pi] (haversine form).
double great_circle_distance(const SphericalPoint& a, const SphericalPoint& b);

// Horizontal-wraparound pixel distance on an ERP grid of the given width.
double erp_pixel_distance(double ax, double ay, double bx, double by, int width);

// Bilinear samplers. x wraps (the ERP seam is continuous), y clamps.
double sample_erp_bilinear(const Image8& img, double px, double py, int channel = 0);
void sample_erp_bilinear_rgb(const Image8& img, double px, double py, double out[3]);

enum class CubeFace : int { Front = 0, Right = 1, Back = 2, Left = 3, Top = 4, Bottom = 5 };

// Six square faces; Front looks at (lat 0, lon 0), Right at lon +pi/2, Back
// at lon pi, Left at lon -pi/2, Top at the north pole, Bottom at the south
// pole. Face pixel grids are laid out per face_direction().
struct CubemapFaces {
    int face_size = 0;
    std::array<Image8, 6> faces;
};

// Unit direction of face pixel (u, v) where u, v in [-1, 1] span the face.
Vec3 face_direction(CubeFace face, double u, double v);

CubemapFaces erp_to_cubemap(const Image8& frame, int face_size);
Image8 cubemap_to_erp(const CubemapFaces& faces, int width, int height);

// Rectilinear (gnomonic) crop of the sphere around `center`.
struct NfovImage {
    Image8 image;
    SphericalPoint center;
    double fov_h_deg = 0.0;
    double fov_v_deg = 0.0;
};

// Maps output pixels of a gnomonic crop to directions on the sphere; shared
// by the renderer and by footprint sampling.
class GnomonicGrid {
  public:
    GnomonicGrid(const SphericalPoint& center, double fov_h_deg, double fov_v_deg, int out_w,
                 int out_h);
    SphericalPoint direction(int i, int j) const;
    int width() const { return out_w_; }
    int height() const { return out_h_; }

  private:
    SphericalPoint center_;
    double tan_h_, tan_v_, sin_lat0_, cos_lat0_;
    int out_w_, out_h_;
};

NfovImage gnomonic_project(const Image8& frame, const SphericalPoint& center, double fov_h_deg,
                           double fov_v_deg, int out_w, int out_h);

// Forward gnomonic mapping: the fractional output pixel where `point` lands
// for the given projection, or no value when the point is behind the plane.
struct GnomonicPixel {
    bool visible = false;
    double px = 0.0;
    double py = 0.0;
};
GnomonicPixel gnomonic_forward(const SphericalPoint& point, const SphericalPoint& center,
                               double fov_h_deg, double fov_v_deg, int out_w, int out_h);

}  // namespace vs360
