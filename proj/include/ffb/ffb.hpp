#pragma once

#include "ffb/errors.hpp"
#include "ffb/grid.hpp"
#include "ffb/dense.hpp"
#include "ffb/basis_ref.hpp"
#include "ffb/transforms.hpp"
#include "ffb/diffops.hpp"
#include "ffb/banded.hpp"
#include "ffb/trendfilter.hpp"
#include "ffb/random.hpp"
#include "ffb/kstest.hpp"
#include "ffb/experiments.hpp"
#include "ffb/io.hpp"
