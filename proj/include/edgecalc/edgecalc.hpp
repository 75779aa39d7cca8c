#pragma once

#include "edgecalc/bessel.hpp"
#include "edgecalc/charts.hpp"
#include "edgecalc/core.hpp"
#include "edgecalc/edge_kernel.hpp"
#include "edgecalc/fields.hpp"
#include "edgecalc/hamiltonian.hpp"
#include "edgecalc/report.hpp"
#include "edgecalc/runner.hpp"
#include "edgecalc/sampling.hpp"
#include "edgecalc/sphharm.hpp"
#include "edgecalc/symbols.hpp"
