#pragma once

#include "cpk/abelian/group.hpp"
#include "cpk/abelian/int_matrix.hpp"
#include "cpk/abelian/lattice.hpp"
#include "cpk/abelian/smith.hpp"
#include "cpk/abelian/subquotient.hpp"
