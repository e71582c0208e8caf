#pragma once

#include "wgabc/boundary.hpp"
#include "wgabc/config.hpp"
#include "wgabc/errors.hpp"
#include "wgabc/field.hpp"
#include "wgabc/grid.hpp"
#include "wgabc/harness.hpp"
#include "wgabc/higdon.hpp"
#include "wgabc/io.hpp"
#include "wgabc/medium.hpp"
#include "wgabc/solver.hpp"
#include "wgabc/source.hpp"
#include "wgabc/tappert.hpp"
#include "wgabc/timing.hpp"
