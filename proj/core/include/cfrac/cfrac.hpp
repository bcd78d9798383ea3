#pragma once

#include "cfrac/csv.hpp"
#include "cfrac/curve.hpp"
#include "cfrac/dims.hpp"
#include "cfrac/errors.hpp"
#include "cfrac/kernel_ops.hpp"
#include "cfrac/linear_cf_solver.hpp"
#include "cfrac/quadrature.hpp"
#include "cfrac/rc_circuit.hpp"
#include "cfrac/rescaling.hpp"
#include "cfrac/sampled.hpp"
