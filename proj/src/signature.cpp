#include "orbisymp/signature.hpp"

#include <sstream>

#include "orbisymp/errors.hpp"

namespace orbisymp {

Rational euler_characteristic(const OrbifoldSignature& sig) {
  Rational chi(2 - 2 * sig.genus - sig.boundary);
  for (int r : sig.cone_orders) chi -= Rational(r - 1, r);
  return chi;
}

void validate(const OrbifoldSignature& sig) {
  if (sig.genus < 0 || sig.boundary < 0)
    throw InvalidSignatureError("negative genus or boundary count");
  for (int r : sig.cone_orders)
    if (r < 2) throw InvalidSignatureError("cone order must be at least 2");
  Rational chi = euler_characteristic(sig);
  if (!(chi < Rational(0)))
    throw InvalidSignatureError("Euler characteristic must be negative, got " +
                                std::to_string(chi.to_double()) + " for " + to_string(sig));
}

int order_two_count(const OrbifoldSignature& sig) {
  int n = 0;
  for (int r : sig.cone_orders)
    if (r == 2) ++n;
  return n;
}

int dimension_closed(const OrbifoldSignature& sig) {
  if (!sig.closed()) throw InvalidSignatureError("dimension formula applies to closed signatures");
  validate(sig);
  return 16 * sig.genus - 16 + 6 * sig.cone_count() - 2 * order_two_count(sig);
}

std::string to_string(const OrbifoldSignature& sig) {
  std::ostringstream os;
  os << "(g=" << sig.genus << ", b=" << sig.boundary << "; ";
  for (size_t i = 0; i < sig.cone_orders.size(); ++i) {
    if (i) os << ",";
    os << sig.cone_orders[i];
  }
  os << ")";
  return os.str();
}

}  // namespace orbisymp
