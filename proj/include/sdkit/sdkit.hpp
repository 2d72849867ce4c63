#pragma once

#include "sdkit/error.hpp"
#include "sdkit/graph.hpp"
#include "sdkit/category.hpp"
#include "sdkit/limits.hpp"
#include "sdkit/decomposition.hpp"
#include "sdkit/chordal.hpp"
#include "sdkit/width.hpp"
#include "sdkit/subobject.hpp"
#include "sdkit/predicates.hpp"
#include "sdkit/solver.hpp"
#include "sdkit/random.hpp"
#include "sdkit/io.hpp"
