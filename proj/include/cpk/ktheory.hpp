#pragma once

#include "cpk/ktheory/diagram.hpp"
#include "cpk/ktheory/iterated.hpp"
#include "cpk/ktheory/kpair.hpp"
#include "cpk/ktheory/pimsner.hpp"
