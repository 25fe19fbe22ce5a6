#include "plt/four_vector.hpp"

namespace plt {

std::string_view to_string(CausalClass c) {
  switch (c) {
    case CausalClass::FutureTimelike: return "future-timelike";
    case CausalClass::FutureLightlike: return "future-lightlike";
    case CausalClass::PastTimelike: return "past-timelike";
    case CausalClass::PastLightlike: return "past-lightlike";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Zero: return "zero";
  }
  return "unknown";
}

CausalClass causal_class(const FourVector& v, double tol) {
  if (euclidean_norm(v) <= tol) return CausalClass::Zero;
  // Relative threshold so that lightlike detection is scale free.
  const double thresh = tol * std::max(1.0, v[0] * v[0]);
  const double n2 = minkowski_dot(v, v);
  if (n2 > thresh) {
    return v[0] > 0.0 ? CausalClass::FutureTimelike : CausalClass::PastTimelike;
  }
  if (n2 < -thresh) return CausalClass::Spacelike;
  return v[0] > 0.0 ? CausalClass::FutureLightlike : CausalClass::PastLightlike;
}

}  // namespace plt
