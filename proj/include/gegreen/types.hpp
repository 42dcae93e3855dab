// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_TYPES_HPP
#define GEGREEN_TYPES_HPP

#include <complex>
#include <cmath>

namespace gegreen {

using ComplexValue = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Side tag for arguments on the cut [-1, 1] of the second-kind function.
enum class CutSide { None, PlusI0, MinusI0 };

// A complex argument optionally tagged with the side of the cut from which a
// real argument in [-1, 1] is approached.
struct BranchedArg {
    ComplexValue value{};
    CutSide side = CutSide::None;

    BranchedArg() = default;
    BranchedArg(ComplexValue v) : value(v) {}
    BranchedArg(double v) : value(v, 0.0) {}
    BranchedArg(ComplexValue v, CutSide s) : value(v), side(s) {}

    bool on_cut() const { return side != CutSide::None; }
};

inline BranchedArg plus_i0(double x) { return BranchedArg{ComplexValue(x, 0.0), CutSide::PlusI0}; }
inline BranchedArg minus_i0(double x) { return BranchedArg{ComplexValue(x, 0.0), CutSide::MinusI0}; }

enum class Space { Hyperbolic, Spherical };

struct SpaceTag {
    Space space = Space::Hyperbolic;
};

enum class Kind { FirstKind_C, SecondKind_D, CutC, CutD };

struct KindTag {
    Kind kind = Kind::FirstKind_C;
};

// Parameters of a Gegenbauer function evaluation: order alpha, degree nu - alpha
// parameterized by nu, and the argument z (side-tagged when on the cut).
struct GegenbauerArgs {
    ComplexValue nu{};
    ComplexValue alpha{};
    BranchedArg z{};
};

inline bool near_integer(ComplexValue z, double tol) {
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

inline bool near_nonpositive_integer(ComplexValue z, double tol) {
    return near_integer(z, tol) && z.real() < 0.5;
}

} // namespace gegreen

#endif
