#pragma once

#include "cssharp/basis.hpp"
#include "cssharp/bounds.hpp"
#include "cssharp/density.hpp"
#include "cssharp/divergence.hpp"
#include "cssharp/errors.hpp"
#include "cssharp/partition.hpp"
#include "cssharp/projection.hpp"
#include "cssharp/quadrature.hpp"
#include "cssharp/sample_stats.hpp"
#include "cssharp/series.hpp"
#include "cssharp/simulation.hpp"
#include "cssharp/summation.hpp"
