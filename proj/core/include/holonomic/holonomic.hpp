#pragma once

#include "holonomic/error.hpp"
#include "holonomic/extended_real.hpp"
#include "holonomic/group.hpp"
#include "holonomic/holonomic_space.hpp"
#include "holonomic/io.hpp"
#include "holonomic/linalg.hpp"
#include "holonomic/ode.hpp"
#include "holonomic/search.hpp"
#include "holonomic/spaceform.hpp"
#include "holonomic/surface_transport.hpp"
#include "holonomic/version.hpp"
