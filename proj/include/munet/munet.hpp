#pragma once

#include "munet/cherry.hpp"
#include "munet/counts.hpp"
#include "munet/dist.hpp"
#include "munet/errors.hpp"
#include "munet/mu.hpp"
#include "munet/network.hpp"
#include "munet/orchard.hpp"
#include "munet/paths.hpp"
#include "munet/structure.hpp"
