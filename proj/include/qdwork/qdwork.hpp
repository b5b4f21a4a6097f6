#pragma once

// Umbrella header.

#include "classical.hpp"
#include "context.hpp"
#include "dwork.hpp"
#include "frobstruct.hpp"
#include "hyper.hpp"
#include "json_io.hpp"
#include "logseries.hpp"
#include "mat2.hpp"
#include "prec.hpp"
#include "qcalc.hpp"
#include "qseries.hpp"
#include "rat.hpp"
#include "report.hpp"
#include "sampling.hpp"
#include "suites.hpp"
