#pragma once

// Scalar backends. Kernels are templates over the scalar type and are
// explicitly instantiated for the types listed in QB_FOR_EACH_REAL.
// The multiprecision types carry their precision in the type, so there is
// no process-wide precision setting to race on when cases run in parallel.

#include <boost/multiprecision/mpfr.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace qb {

using mp40 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                           boost::multiprecision::et_off>;
using mp100 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                            boost::multiprecision::et_off>;

#define QB_FOR_EACH_REAL(X) X(double) X(::qb::mp40) X(::qb::mp100)

enum class Backend { Double, Mp40, Mp100 };

// Smallest backend whose precision covers `digits` decimal digits.
inline Backend backend_for_digits(int digits) {
    if (digits <= 15) return Backend::Double;
    if (digits <= 40) return Backend::Mp40;
    return Backend::Mp100;
}

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Double: return "double";
        case Backend::Mp40: return "mpfr40";
        case Backend::Mp100: return "mpfr100";
    }
    return "?";
}

inline int backend_digits(Backend b) {
    switch (b) {
        case Backend::Double: return 15;
        case Backend::Mp40: return 40;
        case Backend::Mp100: return 100;
    }
    return 15;
}

// Calls f(Real{}) with the scalar type selected by `b`.
template <class F>
decltype(auto) with_backend(Backend b, F&& f) {
    switch (b) {
        case Backend::Mp40: return f(mp40{});
        case Backend::Mp100: return f(mp100{});
        case Backend::Double: break;
    }
    return f(0.0);
}

template <class Real>
Real epsilon_of() {
    return std::numeric_limits<Real>::epsilon();
}

// Converts a double through its shortest round-trip decimal form, so that
// q = 0.3 becomes exactly 3/10 at the target precision instead of the
// binary neighbour of 0.3.
template <class Real>
Real from_double(double v) {
    if constexpr (std::is_same_v<Real, double>) {
        return v;
    } else {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return Real(std::string(buf, res.ptr));
    }
}

template <class Real>
double to_double(const Real& v) {
    if constexpr (std::is_same_v<Real, double>) {
        return v;
    } else {
        return v.template convert_to<double>();
    }
}

// q^k for integer k, exact repeated squaring for every backend.
template <class Real>
Real ipow(const Real& base, long k) {
    if (k < 0) return Real(1) / ipow(base, -k);
    Real result(1);
    Real b = base;
    while (k > 0) {
        if (k & 1) result *= b;
        b *= b;
        k >>= 1;
    }
    return result;
}

inline int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace qb
