#pragma once

#include "bounds.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "mixing.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "version.hpp"
