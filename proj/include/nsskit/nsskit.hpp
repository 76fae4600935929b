#pragma once

#include "config_io.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "gauss_legendre.hpp"
#include "integrator.hpp"
#include "log.hpp"
#include "model.hpp"
#include "nss_locator.hpp"
#include "perturbation.hpp"
#include "picard.hpp"
#include "scattering.hpp"
#include "validation.hpp"
