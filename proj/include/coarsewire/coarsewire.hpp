#pragma once

#include "bounds.hpp"
#include "construct.hpp"
#include "cut.hpp"
#include "error.hpp"
#include "geometry/bridge.hpp"
#include "geometry/certify.hpp"
#include "geometry/embedding.hpp"
#include "graph.hpp"
#include "host.hpp"
#include "io.hpp"
#include "svg.hpp"
#include "wiring.hpp"
