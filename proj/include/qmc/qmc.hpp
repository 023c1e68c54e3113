#pragma once

#include "qmc/types.hpp"
#include "qmc/operators.hpp"
#include "qmc/spaces.hpp"
#include "qmc/spectral.hpp"
#include "qmc/bscc.hpp"
#include "qmc/analysis.hpp"
#include "qmc/oracle.hpp"
#include "qmc/models.hpp"
