#include "vs360/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vs360 {

double wrap_longitude(double lon) {
    double w = lon - 2.0 * kPi * std::floor((lon + kPi) / (2.0 * kPi));
    if (w >= kPi) w -= 2.0 * kPi;  // floor rounding can land exactly on +pi
    return w;
}

SphericalPoint make_spherical(double lat, double lon) {
    if (!(lat >= -kPi / 2 && lat <= kPi / 2))
        throw std::invalid_argument("latitude out of [-pi/2, pi/2]: " + std::to_string(lat));
    return {lat, wrap_longitude(lon)};
}

Vec3 to_unit_vector(const SphericalPoint& p) {
    const double cl = std::cos(p.lat);
    return {cl * std::cos(p.lon), cl * std::sin(p.lon), std::sin(p.lat)};
}

SphericalPoint to_spherical(const Vec3& v) {
    const Vec3 u = v.normalized();
    const double lat = std::asin(std::clamp(u.z, -1.0, 1.0));
    const double lon = std::atan2(u.y, u.x);
    return {lat, wrap_longitude(lon)};
}

SphericalPoint erp_to_spherical(int px, int py, int width, int height) {
    if (px < 0 || px >= width || py < 0 || py >= height)
        throw std::invalid_argument("erp_to_spherical: pixel (" + std::to_string(px) + "," +
                                    std::to_string(py) + ") outside " + std::to_string(width) +
                                    "x" + std::to_string(height));
    const double lon = ((px + 0.5) / width) * 2.0 * kPi - kPi;
    const double lat = kPi / 2 - ((py + 0.5) / height) * kPi;
    return {lat, wrap_longitude(lon)};
}

ErpCoord spherical_to_erp(const SphericalPoint& p, int width, int height) {
    double px = ((p.lon + kPi) / (2.0 * kPi)) * width - 0.5;
    const double py = ((kPi / 2 - p.lat) / kPi) * height - 0.5;
    // wrap px into [-0.5, width - 0.5)
    if (px < -0.5 || px >= width - 0.5) px -= width * std::floor((px + 0.5) / width);
    return {px, py};
}

double great_circle_distance(const SphericalPoint& a, const SphericalPoint& b) {
    const double sdlat = std::sin((b.lat - a.lat) / 2);
    const double sdlon = std::sin((b.lon - a.lon) / 2);
    const double h = sdlat * sdlat + std::cos(a.lat) * std::cos(b.lat) * sdlon * sdlon;
    return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

double erp_pixel_distance(double ax, double ay, double bx, double by, int width) {
    double dx = std::fabs(ax - bx);
    dx = std::min(dx, width - dx);
    const double dy = ay - by;
    return std::sqrt(dx * dx + dy * dy);
}

namespace {

inline int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

// Shared bilinear tap: x wraps, y clamps.
template <int Channels>
void sample_taps(const Image8& img, double px, double py, double out[Channels]) {
    const int w = img.width, h = img.height;
    const double fx = std::floor(px), fy = std::floor(py);
    const double wx = px - fx, wy = py - fy;
    const int x0 = wrap_index(static_cast<int>(fx), w);
    const int x1 = wrap_index(x0 + 1, w);
    const int y0 = std::clamp(static_cast<int>(fy), 0, h - 1);
    const int y1 = std::clamp(y0 + 1, 0, h - 1);
    for (int c = 0; c < Channels; ++c) {
        const double v00 = img.at(x0, y0, c), v10 = img.at(x1, y0, c);
        const double v01 = img.at(x0, y1, c), v11 = img.at(x1, y1, c);
        out[c] = (1 - wy) * ((1 - wx) * v00 + wx * v10) + wy * ((1 - wx) * v01 + wx * v11);
    }
}

}  // namespace

double sample_erp_bilinear(const Image8& img, double px, double py, int channel) {
    double v[3];
    if (img.channels == 1) {
        sample_taps<1>(img, px, py, v);
        return v[0];
    }
    sample_taps<3>(img, px, py, v);
    return v[channel];
}

void sample_erp_bilinear_rgb(const Image8& img, double px, double py, double out[3]) {
    if (img.channels == 1) {
        sample_taps<1>(img, px, py, out);
        out[1] = out[2] = out[0];
        return;
    }
    sample_taps<3>(img, px, py, out);
}

Vec3 face_direction(CubeFace face, double u, double v) {
    // forward + u*right + v*down, normalized
    switch (face) {
        case CubeFace::Front:
            return Vec3{1.0, u, -v}.normalized();
        case CubeFace::Right:
            return Vec3{-u, 1.0, -v}.normalized();
        case CubeFace::Back:
            return Vec3{-1.0, -u, -v}.normalized();
        case CubeFace::Left:
            return Vec3{u, -1.0, -v}.normalized();
        case CubeFace::Top:
            return Vec3{v, u, 1.0}.normalized();
        case CubeFace::Bottom:
            return Vec3{-v, u, -1.0}.normalized();
    }
    return {1.0, 0.0, 0.0};
}

CubemapFaces erp_to_cubemap(const Image8& frame, int face_size) {
    if (face_size < 2) throw std::invalid_argument("erp_to_cubemap: face_size must be >= 2");
    CubemapFaces out;
    out.face_size = face_size;
    for (int f = 0; f < 6; ++f) {
        Image8 face(face_size, face_size, frame.channels);
        for (int j = 0; j < face_size; ++j) {
            const double v = 2.0 * (j + 0.5) / face_size - 1.0;
            for (int i = 0; i < face_size; ++i) {
                const double u = 2.0 * (i + 0.5) / face_size - 1.0;
                const SphericalPoint sp =
                    to_spherical(face_direction(static_cast<CubeFace>(f), u, v));
                const ErpCoord pc = spherical_to_erp(sp, frame.width, frame.height);
                double rgb[3];
                sample_erp_bilinear_rgb(frame, pc.px, pc.py, rgb);
                for (int c = 0; c < frame.channels; ++c)
                    face.at(i, j, c) = static_cast<std::uint8_t>(
                        std::clamp(std::floor(rgb[c] + 0.5), 0.0, 255.0));
            }
        }
        out.faces[f] = std::move(face);
    }
    return out;
}

namespace {

// Face selection by dominant axis, then in-face coordinates; exact inverse
// of face_direction up to normalization.
void direction_to_face(const Vec3& d, CubeFace* face, double* u, double* v) {
    const double ax = std::fabs(d.x), ay = std::fabs(d.y), az = std::fabs(d.z);
    if (ax >= ay && ax >= az) {
        if (d.x > 0) {
            *face = CubeFace::Front;
            *u = d.y / d.x;
            *v = -d.z / d.x;
        } else {
            *face = CubeFace::Back;
            *u = d.y / d.x;  // d.x < 0: -(-u)=u
            *v = d.z / d.x;
        }
    } else if (ay >= az) {
        if (d.y > 0) {
            *face = CubeFace::Right;
            *u = -d.x / d.y;
            *v = -d.z / d.y;
        } else {
            *face = CubeFace::Left;
            *u = -d.x / d.y;
            *v = d.z / d.y;
        }
    } else {
        if (d.z > 0) {
            *face = CubeFace::Top;
            *u = d.y / d.z;
            *v = d.x / d.z;
        } else {
            *face = CubeFace::Bottom;
            *u = -d.y / d.z;
            *v = d.x / d.z;
        }
    }
}

double sample_face_bilinear(const Image8& face, double u, double v, int c) {
    // u,v in [-1,1] -> fractional pixel, clamped at face borders
    const int s = face.width;
    const double px = std::clamp((u + 1.0) * 0.5 * s - 0.5, 0.0, s - 1.0);
    const double py = std::clamp((v + 1.0) * 0.5 * s - 0.5, 0.0, s - 1.0);
    const int x0 = static_cast<int>(px), y0 = static_cast<int>(py);
    const int x1 = std::min(x0 + 1, s - 1), y1 = std::min(y0 + 1, s - 1);
    const double wx = px - x0, wy = py - y0;
    const double v00 = face.at(x0, y0, c), v10 = face.at(x1, y0, c);
    const double v01 = face.at(x0, y1, c), v11 = face.at(x1, y1, c);
    return (1 - wy) * ((1 - wx) * v00 + wx * v10) + wy * ((1 - wx) * v01 + wx * v11);
}

}  // namespace

Image8 cubemap_to_erp(const CubemapFaces& faces, int width, int height) {
    for (const auto& f : faces.faces)
        if (f.width != faces.face_size || f.height != faces.face_size || f.empty())
            throw std::invalid_argument("cubemap_to_erp: faces must be square and non-empty");
    const int channels = faces.faces[0].channels;
    Image8 out(width, height, channels);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Vec3 d = to_unit_vector(erp_to_spherical(x, y, width, height));
            CubeFace face;
            double u, v;
            direction_to_face(d, &face, &u, &v);
            const Image8& src = faces.faces[static_cast<int>(face)];
            for (int c = 0; c < channels; ++c)
                out.at(x, y, c) = static_cast<std::uint8_t>(
                    std::clamp(std::floor(sample_face_bilinear(src, u, v, c) + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

namespace {

void check_fov(double fov_h_deg, double fov_v_deg) {
    if (!(fov_h_deg > 0.0 && fov_h_deg < 180.0 && fov_v_deg > 0.0 && fov_v_deg < 180.0))
        throw std::invalid_argument("field of view must lie strictly between 0 and 180 degrees");
}

}  // namespace

GnomonicGrid::GnomonicGrid(const SphericalPoint& center, double fov_h_deg, double fov_v_deg,
                           int out_w, int out_h)
    : center_(center),
      tan_h_(std::tan(fov_h_deg * kPi / 360.0)),
      tan_v_(std::tan(fov_v_deg * kPi / 360.0)),
      sin_lat0_(std::sin(center.lat)),
      cos_lat0_(std::cos(center.lat)),
      out_w_(out_w),
      out_h_(out_h) {
    check_fov(fov_h_deg, fov_v_deg);
    if (out_w < 1 || out_h < 1) throw std::invalid_argument("gnomonic grid: empty output");
}

SphericalPoint GnomonicGrid::direction(int i, int j) const {
    // tangent-plane coordinates; y points north (up in the image)
    const double y = (1.0 - 2.0 * (j + 0.5) / out_h_) * tan_v_;
    const double x = (2.0 * (i + 0.5) / out_w_ - 1.0) * tan_h_;
    const double rho = std::sqrt(x * x + y * y);
    if (rho < 1e-15) return center_;
    const double c = std::atan(rho);
    const double sin_c = std::sin(c), cos_c = std::cos(c);
    const double lat =
        std::asin(std::clamp(cos_c * sin_lat0_ + y * sin_c * cos_lat0_ / rho, -1.0, 1.0));
    const double lon =
        center_.lon + std::atan2(x * sin_c, rho * cos_c * cos_lat0_ - y * sin_c * sin_lat0_);
    return {lat, wrap_longitude(lon)};
}

NfovImage gnomonic_project(const Image8& frame, const SphericalPoint& center, double fov_h_deg,
                           double fov_v_deg, int out_w, int out_h) {
    const GnomonicGrid grid(center, fov_h_deg, fov_v_deg, out_w, out_h);

    NfovImage out;
    out.center = center;
    out.fov_h_deg = fov_h_deg;
    out.fov_v_deg = fov_v_deg;
    out.image = Image8(out_w, out_h, frame.channels);

    for (int j = 0; j < out_h; ++j) {
        for (int i = 0; i < out_w; ++i) {
            const ErpCoord pc = spherical_to_erp(grid.direction(i, j), frame.width, frame.height);
            double rgb[3];
            sample_erp_bilinear_rgb(frame, pc.px, pc.py, rgb);
            for (int c = 0; c < frame.channels; ++c)
                out.image.at(i, j, c) = static_cast<std::uint8_t>(
                    std::clamp(std::floor(rgb[c] + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

GnomonicPixel gnomonic_forward(const SphericalPoint& point, const SphericalPoint& center,
                               double fov_h_deg, double fov_v_deg, int out_w, int out_h) {
    check_fov(fov_h_deg, fov_v_deg);
    const double dlon = point.lon - center.lon;
    const double cos_c = std::sin(center.lat) * std::sin(point.lat) +
                         std::cos(center.lat) * std::cos(point.lat) * std::cos(dlon);
    GnomonicPixel r;
    if (cos_c <= 1e-12) return r;  // at or behind the tangent plane
    const double x = std::cos(point.lat) * std::sin(dlon) / cos_c;
    const double y = (std::cos(center.lat) * std::sin(point.lat) -
                      std::sin(center.lat) * std::cos(point.lat) * std::cos(dlon)) /
                     cos_c;
    const double tan_h = std::tan(fov_h_deg * kPi / 360.0);
    const double tan_v = std::tan(fov_v_deg * kPi / 360.0);
    r.visible = true;
    r.px = (x / tan_h + 1.0) * 0.5 * out_w - 0.5;
    r.py = (1.0 - y / tan_v) * 0.5 * out_h - 0.5;
    return r;
}

}  // namespace vs360
