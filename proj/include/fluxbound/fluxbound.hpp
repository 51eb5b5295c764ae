#pragma once

#include "fluxbound/ab_spectrum.hpp"
#include "fluxbound/ac_spectrum.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/numkernel.hpp"
#include "fluxbound/oracle.hpp"
