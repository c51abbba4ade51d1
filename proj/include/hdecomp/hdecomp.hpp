#pragma once

// Convenience include for the whole library.

#include "hdecomp/compose.hpp"
#include "hdecomp/cycles.hpp"
#include "hdecomp/graph.hpp"
#include "hdecomp/io.hpp"
#include "hdecomp/orientation.hpp"
#include "hdecomp/piece.hpp"
#include "hdecomp/sunlet.hpp"
#include "hdecomp/verify.hpp"
