#pragma once

#include <cmath>

namespace geosph {

/// 2D vector for plane-strain kinematics (positions, velocities, forces).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }
inline Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm2(const Vec2& a) { return dot(a, a); }
inline double norm(const Vec2& a) { return std::sqrt(norm2(a)); }

/// Full (generally non-symmetric) 2x2 tensor: deformation gradient,
/// velocity gradient and friends.
struct Tensor2D {
    double xx = 0.0, xy = 0.0;
    double yx = 0.0, yy = 0.0;

    static Tensor2D identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double det() const { return xx * yy - xy * yx; }
    double trace() const { return xx + yy; }
    Tensor2D transposed() const { return {xx, yx, xy, yy}; }

    /// Inverse; caller checks det() != 0.
    Tensor2D inverse() const {
        const double d = det();
        return {yy / d, -xy / d, -yx / d, xx / d};
    }

    Tensor2D& operator+=(const Tensor2D& o) {
        xx += o.xx; xy += o.xy; yx += o.yx; yy += o.yy;
        return *this;
    }
    Tensor2D& operator-=(const Tensor2D& o) {
        xx -= o.xx; xy -= o.xy; yx -= o.yx; yy -= o.yy;
        return *this;
    }
    Tensor2D& operator*=(double s) {
        xx *= s; xy *= s; yx *= s; yy *= s;
        return *this;
    }
};

inline Tensor2D operator+(Tensor2D a, const Tensor2D& b) { return a += b; }
inline Tensor2D operator-(Tensor2D a, const Tensor2D& b) { return a -= b; }
inline Tensor2D operator*(double s, Tensor2D a) { return a *= s; }
inline Tensor2D operator*(Tensor2D a, double s) { return a *= s; }

inline Vec2 operator*(const Tensor2D& t, const Vec2& v) {
    return {t.xx * v.x + t.xy * v.y, t.yx * v.x + t.yy * v.y};
}

inline Tensor2D operator*(const Tensor2D& a, const Tensor2D& b) {
    return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
            a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
}

/// a (x) b
inline Tensor2D outer(const Vec2& a, const Vec2& b) {
    return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
}

inline double frobenius_norm(const Tensor2D& t) {
    return std::sqrt(t.xx * t.xx + t.xy * t.xy + t.yx * t.yx + t.yy * t.yy);
}

/// Symmetric plane-strain tensor. The out-of-plane normal component zz is
/// carried explicitly: in-plane kinematics force eps_zz = 0, but sigma_zz
/// evolves through the constitutive law and enters the stress invariants.
struct SymTensor2D {
    double xx = 0.0, yy = 0.0, zz = 0.0, xy = 0.0;

    SymTensor2D() = default;
    SymTensor2D(double xx_, double yy_, double zz_, double xy_)
        : xx(xx_), yy(yy_), zz(zz_), xy(xy_) {}

    static SymTensor2D isotropic(double v) { return {v, v, v, 0.0}; }

    double trace() const { return xx + yy + zz; }

    SymTensor2D& operator+=(const SymTensor2D& o) {
        xx += o.xx; yy += o.yy; zz += o.zz; xy += o.xy;
        return *this;
    }
    SymTensor2D& operator-=(const SymTensor2D& o) {
        xx -= o.xx; yy -= o.yy; zz -= o.zz; xy -= o.xy;
        return *this;
    }
    SymTensor2D& operator*=(double s) {
        xx *= s; yy *= s; zz *= s; xy *= s;
        return *this;
    }

    /// In-plane 2x2 part.
    Tensor2D plane() const { return {xx, xy, xy, yy}; }
};

inline SymTensor2D operator+(SymTensor2D a, const SymTensor2D& b) { return a += b; }
inline SymTensor2D operator-(SymTensor2D a, const SymTensor2D& b) { return a -= b; }
inline SymTensor2D operator*(double s, SymTensor2D a) { return a *= s; }
inline SymTensor2D operator*(SymTensor2D a, double s) { return a *= s; }
inline bool operator==(const SymTensor2D& a, const SymTensor2D& b) {
    return a.xx == b.xx && a.yy == b.yy && a.zz == b.zz && a.xy == b.xy;
}

/// Full contraction a : b (the single xy component counts twice).
inline double double_contract(const SymTensor2D& a, const SymTensor2D& b) {
    return a.xx * b.xx + a.yy * b.yy + a.zz * b.zz + 2.0 * a.xy * b.xy;
}

/// Hydrostatic/deviatoric split of a stress-like tensor.
/// p is positive in compression: p = -(xx + yy + zz)/3.
struct StressInvariants {
    double p = 0.0;           ///< mean pressure, Pa
    double j2 = 0.0;          ///< second deviatoric invariant, Pa^2
    SymTensor2D deviator;     ///< s = t + p I (traceless to rounding)
};

inline StressInvariants invariants(const SymTensor2D& t) {
    StressInvariants out;
    out.p = -t.trace() / 3.0;
    out.deviator = {t.xx + out.p, t.yy + out.p, t.zz + out.p, t.xy};
    out.j2 = 0.5 * double_contract(out.deviator, out.deviator);
    return out;
}

} // namespace geosph
