/// Umbrella header.
#pragma once

#include "abelian.hpp"
#include "toda.hpp"
#include "james.hpp"
#include "spaces.hpp"
#include "literature.hpp"
#include "engine.hpp"
#include "resolve.hpp"
#include "tables.hpp"
#include "trace_io.hpp"
