#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace u3 {

// All arithmetic in the library is exact. Root coordinates grow
// exponentially with tree depth, so machine integers are not an option.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign(const Int& v) { return v.sign(); }
inline int sign(const Rat& v) { return v.sign(); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Rat rat(const Int& num, const Int& den) { return Rat(num, den); }

}  // namespace u3
