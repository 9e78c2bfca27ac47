#pragma once

#include "dezawl/group.hpp"
#include "dezawl/group_ring.hpp"
#include "dezawl/sring.hpp"
#include "dezawl/graph.hpp"
#include "dezawl/graph_io.hpp"
#include "dezawl/wl.hpp"
#include "dezawl/spectrum.hpp"
#include "dezawl/report.hpp"
