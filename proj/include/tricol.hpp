#pragma once

// Umbrella header.

#include "tricol/analysis.hpp"
#include "tricol/bigint.hpp"
#include "tricol/diophantine.hpp"
#include "tricol/errors.hpp"
#include "tricol/interval.hpp"
#include "tricol/maps.hpp"
#include "tricol/random.hpp"
#include "tricol/sweep.hpp"
#include "tricol/triadic.hpp"
