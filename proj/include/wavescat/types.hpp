#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>

namespace wavescat {

using Cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Non-fatal diagnostics (spacing-ratio checks, impedance sign overrides) go
/// through a process-wide handler so tests and embedding code can capture them.
/// The default handler prints to stderr.
using WarnHandler = std::function<void(const std::string&)>;
void warn(const std::string& message);
WarnHandler set_warn_handler(WarnHandler handler);

}  // namespace wavescat
