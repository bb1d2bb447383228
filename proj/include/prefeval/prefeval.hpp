#pragma once

#include "core.hpp"
#include "experiments.hpp"
#include "protocols.hpp"
#include "rationality.hpp"
#include "report_io.hpp"
#include "scales.hpp"
#include "stats.hpp"
#include "verify.hpp"
