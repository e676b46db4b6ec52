#ifndef PBAN_RATIONAL_HPP
#define PBAN_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "pban/errors.hpp"

namespace pban {

/// Exact rational scalar. mpq_class keeps values in canonical reduced
/// form with positive denominator, which is exactly the invariant we need.
using Scalar = mpq_class;

inline Scalar abs(const Scalar& q) { return q < 0 ? Scalar(-q) : q; }

inline int sign(const Scalar& q) { return sgn(q); }

/// Parses "p", "-p/q" or "p/q". Whitespace is not accepted.
inline Scalar parse_scalar(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  try {
    Scalar q(s);
    if (q.get_den() <= 0) throw ParseError("nonpositive denominator in: " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + s);
  }
}

/// Serializes as "p" or "p/q".
inline std::string scalar_str(const Scalar& q) { return q.get_str(); }

}  // namespace pban

#endif
