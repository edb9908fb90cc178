#pragma once

#include "lumenbell/angles.hpp"
#include "lumenbell/apparatus.hpp"
#include "lumenbell/bench_format.hpp"
#include "lumenbell/bench_runner.hpp"
#include "lumenbell/elements.hpp"
#include "lumenbell/experiment.hpp"
#include "lumenbell/export.hpp"
#include "lumenbell/fields.hpp"
#include "lumenbell/qstate.hpp"
