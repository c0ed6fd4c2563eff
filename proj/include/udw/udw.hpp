#pragma once

#include "udw/errors.hpp"
#include "udw/gauss_kronrod.hpp"
#include "udw/linalg.hpp"
#include "udw/measures.hpp"
#include "udw/optimize.hpp"
#include "udw/params.hpp"
#include "udw/quadrature.hpp"
#include "udw/series.hpp"
#include "udw/special.hpp"
#include "udw/state.hpp"
#include "udw/sweep.hpp"
