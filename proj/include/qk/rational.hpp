#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qk {

// All scalar arithmetic is exact: coefficients are arbitrary-precision
// rationals, never floating point.
using Rat = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q".
inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw error("invalid rational literal: " + s);
    if (r.get_den() == 0)
        throw error("zero denominator in rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace qk
