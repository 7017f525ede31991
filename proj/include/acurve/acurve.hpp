#pragma once

#include "analysis.hpp"
#include "approx.hpp"
#include "cartoon.hpp"
#include "fft.hpp"
#include "frame.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "pipeline.hpp"
#include "rng.hpp"
#include "transform.hpp"
