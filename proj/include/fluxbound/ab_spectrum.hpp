#pragma once

#include "fluxbound/ab_channel.hpp"
#include "fluxbound/ab_density.hpp"
#include "fluxbound/ab_doublets.hpp"
#include "fluxbound/ab_levels.hpp"
