#pragma once

#include "sigeq/equilibrium.hpp"
#include "sigeq/experiment.hpp"
#include "sigeq/meanfield.hpp"
#include "sigeq/metrics.hpp"
#include "sigeq/model.hpp"
#include "sigeq/quad.hpp"
#include "sigeq/response.hpp"
#include "sigeq/signal.hpp"
#include "sigeq/sim.hpp"
