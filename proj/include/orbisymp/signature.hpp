#pragma once

#include <string>
#include <vector>

#include "orbisymp/rational.hpp"

namespace orbisymp {

// Compact orientable cone 2-orbifold: genus, boundary circles, cone orders.
// No mirror boundary or corner reflectors.
struct OrbifoldSignature {
  int genus = 0;
  int boundary = 0;
  std::vector<int> cone_orders;

  int cone_count() const { return static_cast<int>(cone_orders.size()); }
  bool closed() const { return boundary == 0; }

  friend bool operator==(const OrbifoldSignature& a, const OrbifoldSignature& b) {
    return a.genus == b.genus && a.boundary == b.boundary && a.cone_orders == b.cone_orders;
  }
};

// chi = 2 - 2g - b - sum_i (1 - 1/r_i), exact.
Rational euler_characteristic(const OrbifoldSignature& sig);

// Throws InvalidSignatureError unless all cone orders are >= 2 and chi < 0.
void validate(const OrbifoldSignature& sig);

// Number of order-two cone points.
int order_two_count(const OrbifoldSignature& sig);

// dim of the character variety component for a closed signature:
// 16g - 16 + 6c - 2c_b  (c_b = number of order-two cones).
int dimension_closed(const OrbifoldSignature& sig);

std::string to_string(const OrbifoldSignature& sig);

}  // namespace orbisymp
