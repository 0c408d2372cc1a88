#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gravhycom {

/// Exact integer used for every coefficient and matrix entry.
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& value) { return value.str(); }

inline bool fits_int64(const Integer& value) {
    return value >= std::numeric_limits<std::int64_t>::min() &&
           value <= std::numeric_limits<std::int64_t>::max();
}

inline Integer abs_value(const Integer& value) { return value < 0 ? Integer(-value) : value; }

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
    Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

}  // namespace gravhycom
