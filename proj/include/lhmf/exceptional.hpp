#pragma once

// The exceptional set E_1 = union of M(i R_+) over M in SL2(Z), decided and
// enumerated exactly.  tau lies on M^{-1}(i R_+) iff
//     N(M) := ac|tau|^2 + (ad+bc) Re(tau) + bd = 0,
// and the matrices with ac > 0, Re(M tau) <= 0 form the finite sum appearing
// in the locally polynomial part: the geodesic M^{-1}(i R_+) with ac != 0 is a
// semicircle of radius 1/(2|ac|), so ac <= 1/(2v) bounds the search.

#include <lhmf/quadform.hpp>

namespace lhmf {

inline Rat circle_value(const Mat2& m, const Rat& u, const Rat& abs2) {
    return Rat(m.a * m.c) * abs2 + Rat(m.a * m.d + m.b * m.c) * u + Rat(m.b * m.d);
}

// d/du of circle_value at the point (orientation of the crossing)
inline Rat circle_du(const Mat2& m, const Rat& u) { return Rat(2 * m.a * m.c) * u + Rat(m.a * m.d + m.b * m.c); }

enum class ExcMode { strict_interior, boundary };

// PSL2 representatives (each stands for +-M, multiplicity 2).
//  strict_interior: ac > 0 and Re(M tau) < 0
//  boundary:        Re(M tau) = 0 exactly (includes the vertical families
//                   with ac = 0 when u is an integer)
inline std::vector<Mat2> enumerate_exceptional_matrices(const ExactPoint& pt, ExcMode mode) {
    std::vector<Mat2> out;
    const Rat u = pt.u;
    const Rat abs2 = pt.abs2();
    const Rat v2 = pt.v_squared();

    if (mode == ExcMode::boundary && is_integer(pt.u)) {
        long long m = (-num(u) / den(u)).template convert_to<long long>();
        out.push_back(Mat2{1, m, 0, 1});       // tau + m on i R_+
        out.push_back(Mat2{0, -1, 1, m});      // -1/(tau+m) on i R_+
    }

    // |ac| <= 1/(2v)  <=>  4 (ac)^2 v^2 <= 1.  The interior condition needs
    // ac > 0; boundary enumeration must also cover the ac < 0 geodesics.
    for (long long a = 1;; ++a) {
        if (Rat(4 * a * a) * v2 > 1) break;
        for (long long g = 1;; ++g) {
            long long ag = a * g;
            if (Rat(4 * ag * ag) * v2 > 1) break;
            if (std::gcd(a, g) != 1) continue;
            for (int sign = 0; sign < (mode == ExcMode::boundary ? 2 : 1); ++sign) {
            long long c = sign ? -g : g;
            long long ac = a * c;
            // particular solution a*d0 - b0*c = 1
            long long b0 = 0, d0 = 0;
            {
                long long gg = a, h = g, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
                while (h != 0) {
                    long long q = gg / h, t;
                    t = gg - q * h; gg = h; h = t;
                    t = u0 - q * u1; u0 = u1; u1 = t;
                    t = v0 - q * v1; v0 = v1; v1 = t;
                }
                // 1 == u0*a + v0*g ; want a*d0 - c*b0 = 1
                d0 = u0;
                b0 = sign ? v0 : -v0;
            }
            // N(t) over the family b = b0 + t a, d = d0 + t c (integer coefficients
            // after clearing denominators by the positive common denominator)
            Rat s0 = Rat(a * d0 + b0 * c);
            Rat A = Rat(ac), B = s0 + Rat(2 * ac) * u, C = Rat(ac) * abs2 + s0 * u + Rat(b0 * d0);
            Int dn = boost::multiprecision::lcm(boost::multiprecision::lcm(den(A), den(B)), den(C));
            Int Ai = num(A) * (dn / den(A)), Bi = num(B) * (dn / den(B)), Ci = num(C) * (dn / den(C));
            Int disc = Bi * Bi - 4 * Ai * Ci;
            if (disc < 0) continue;
            Int sq = isqrt(disc);
            // scan integers around the root interval; exact sign decides
            // (A may be negative in boundary mode, so order the candidates)
            Int r1 = (-Bi - sq) / (2 * Ai), r2 = (-Bi + sq) / (2 * Ai);
            Int t_lo = boost::multiprecision::min(r1, r2) - 2;
            Int t_hi = boost::multiprecision::max(r1, r2) + 2;
            for (Int t = t_lo; t <= t_hi; ++t) {
                Int val = Ai * t * t + Bi * t + Ci;
                bool take = (mode == ExcMode::strict_interior) ? (val < 0) : (val == 0);
                if (!take) continue;
                long long tl = t.template convert_to<long long>();
                out.push_back(Mat2{a, b0 + tl * a, c, d0 + tl * c});
            }
            }
        }
    }
    return out;
}

inline bool is_on_exceptional_set(const ExactPoint& pt) {
    if (is_integer(pt.u)) return true;
    return !enumerate_exceptional_matrices(pt, ExcMode::boundary).empty();
}

inline ExactPoint lift_point(Cplx tau) {
    if (tau.imag() <= 0) throw std::domain_error("point must be in the upper half-plane");
    Rat v = rat_from_double(tau.imag());
    return ExactPoint::from_v_squared(rat_from_double(tau.real()), v * v);
}

}  // namespace lhmf
