#pragma once

#include "flatknot/catalog.hpp"
#include "flatknot/compose.hpp"
#include "flatknot/error.hpp"
#include "flatknot/gauss.hpp"
#include "flatknot/invariants.hpp"
#include "flatknot/io.hpp"
#include "flatknot/moves.hpp"
#include "flatknot/reduce.hpp"
