#pragma once

#include "latgen/alphabeta.hpp"
#include "latgen/canonical.hpp"
#include "latgen/enumerate.hpp"
#include "latgen/extension.hpp"
#include "latgen/lattice.hpp"
