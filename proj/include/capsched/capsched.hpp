#pragma once

#include "bounds.hpp"
#include "compress.hpp"
#include "core.hpp"
#include "experiment.hpp"
#include "generator.hpp"
#include "gantt.hpp"
#include "json_io.hpp"
#include "knapsack.hpp"
#include "oracle.hpp"
#include "pack_schedule.hpp"
#include "profile.hpp"
#include "schedulers.hpp"
#include "strip_pack.hpp"
#include "version.hpp"
