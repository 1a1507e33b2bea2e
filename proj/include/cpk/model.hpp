#pragma once

#include "cpk/model/graph.hpp"
#include "cpk/model/kdata.hpp"
#include "cpk/model/two_graph.hpp"
