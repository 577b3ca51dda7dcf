#include "resvar/errors.hpp"

namespace resvar {

QuadratureError::QuadratureError(const std::string& what, double best_estimate,
                                 double error_estimate, double abscissa)
    : NumericalError(what),
      best_estimate_(best_estimate),
      error_estimate_(error_estimate),
      abscissa_(abscissa) {}

MassError::MassError(const std::string& what, double mass) : ParameterError(what), mass_(mass) {}

}  // namespace resvar
