// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_VORTEX_HPP
#define VORTEX_VORTEX_HPP

#include "vortex/channel.hpp"
#include "vortex/errors.hpp"
#include "vortex/geometry.hpp"
#include "vortex/metrics.hpp"
#include "vortex/parallel.hpp"
#include "vortex/specfun.hpp"
#include "vortex/transceiver.hpp"

#endif
