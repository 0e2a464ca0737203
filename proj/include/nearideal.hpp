#pragma once

// Umbrella header.

#include "nearideal/arsim.hpp"
#include "nearideal/bench.hpp"
#include "nearideal/conditions.hpp"
#include "nearideal/realization.hpp"
#include "nearideal/report_json.hpp"
#include "nearideal/stream.hpp"
#include "nearideal/xfer.hpp"
