#pragma once

#include "resvar/bounds.hpp"
#include "resvar/curve.hpp"
#include "resvar/distributions.hpp"
#include "resvar/erf.hpp"
#include "resvar/errors.hpp"
#include "resvar/measure_curve.hpp"
#include "resvar/measures.hpp"
#include "resvar/ou_fpt.hpp"
#include "resvar/phm.hpp"
#include "resvar/quadrature.hpp"
#include "resvar/residual.hpp"
