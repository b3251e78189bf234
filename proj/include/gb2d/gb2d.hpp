#pragma once

#include "gb2d/asymptotic.hpp"
#include "gb2d/bessel.hpp"
#include "gb2d/check.hpp"
#include "gb2d/core.hpp"
#include "gb2d/errors.hpp"
#include "gb2d/grid.hpp"
#include "gb2d/index.hpp"
#include "gb2d/nodal.hpp"
#include "gb2d/quadrature.hpp"
#include "gb2d/relations.hpp"
#include "gb2d/series.hpp"
#include "gb2d/small.hpp"
