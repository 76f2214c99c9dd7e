#pragma once

#include "lpvoronoi/bisector.hpp"
#include "lpvoronoi/canonical.hpp"
#include "lpvoronoi/convergence.hpp"
#include "lpvoronoi/errors.hpp"
#include "lpvoronoi/norms.hpp"
#include "lpvoronoi/raster.hpp"
