#pragma once

#include "volterra_lab/summation.hpp"
#include "volterra_lab/fft.hpp"
#include "volterra_lab/special.hpp"
#include "volterra_lab/quadrature.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/series_io.hpp"
#include "volterra_lab/space_norms.hpp"
#include "volterra_lab/volterra.hpp"
#include "volterra_lab/criteria.hpp"
#include "volterra_lab/report.hpp"
#include "volterra_lab/smooth_basis.hpp"
#include "volterra_lab/families.hpp"
#include "volterra_lab/config.hpp"
#include "volterra_lab/experiments.hpp"
