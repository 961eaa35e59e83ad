#pragma once

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"
#include "dyniso/graph_io.hpp"
#include "dyniso/iso.hpp"
#include "dyniso/matrix.hpp"
#include "dyniso/oracle.hpp"
#include "dyniso/reduction.hpp"
#include "dyniso/refine.hpp"
#include "dyniso/render.hpp"
#include "dyniso/series.hpp"
#include "dyniso/sim.hpp"
