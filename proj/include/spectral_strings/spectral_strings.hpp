#pragma once

// Umbrella header for the spectral-strings library: spectral action
// terms of the two-frame doubled geometry on the plane, via closed
// forms (analytic.hpp) and first-principles symbol quadrature
// (symbols.hpp + quadrature.hpp + oracle.hpp).

#include "analytic.hpp"
#include "clifford.hpp"
#include "geometry.hpp"
#include "mat2.hpp"
#include "model_io.hpp"
#include "oracle.hpp"
#include "quadrature.hpp"
#include "symbols.hpp"
