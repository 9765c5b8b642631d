// Convenience umbrella: the whole library in one include.
#pragma once

#include "pstlab/common.hpp"
#include "pstlab/matrix.hpp"
#include "pstlab/exact.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/charpoly.hpp"
#include "pstlab/spectrum.hpp"
#include "pstlab/decomp.hpp"
#include "pstlab/evolution.hpp"
#include "pstlab/hadamard.hpp"
#include "pstlab/coherent.hpp"
#include "pstlab/analysis.hpp"
