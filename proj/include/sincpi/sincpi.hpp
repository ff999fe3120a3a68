#pragma once

#include "sincpi/analysis.hpp"
#include "sincpi/bigreal.hpp"
#include "sincpi/elementary.hpp"
#include "sincpi/erf_gauss.hpp"
#include "sincpi/oracles.hpp"
#include "sincpi/pi_series.hpp"
#include "sincpi/precision.hpp"
#include "sincpi/quadrature.hpp"
#include "sincpi/sinc_expansion.hpp"
