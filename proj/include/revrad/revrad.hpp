#ifndef REVRAD_REVRAD_HPP
#define REVRAD_REVRAD_HPP

#include "revrad/bolker.hpp"
#include "revrad/circular_mean.hpp"
#include "revrad/config.hpp"
#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/experiments.hpp"
#include "revrad/fourier.hpp"
#include "revrad/io.hpp"
#include "revrad/profiles.hpp"
#include "revrad/projector.hpp"
#include "revrad/reconstruct.hpp"
#include "revrad/solvers.hpp"
#include "revrad/volterra.hpp"

#endif
