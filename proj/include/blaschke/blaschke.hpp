#pragma once

/// Umbrella header: finite Blaschke products, their boundary dynamics, the
/// circle transfer operator, truncated Hardy-space operator matrices, and the
/// attached classification machinery.

#include "blaschke/blaschke_product.hpp"
#include "blaschke/dynamics.hpp"
#include "blaschke/fft.hpp"
#include "blaschke/fibers.hpp"
#include "blaschke/hardy_ops.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/polynomial.hpp"
#include "blaschke/prng.hpp"
#include "blaschke/rootfinding.hpp"
#include "blaschke/spec_file.hpp"
#include "blaschke/symbol_function.hpp"
#include "blaschke/transfer.hpp"
