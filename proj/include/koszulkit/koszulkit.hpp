#pragma once

#include "koszulkit/error.hpp"
#include "koszulkit/word.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/expr_parser.hpp"
#include "koszulkit/subspace.hpp"
#include "koszulkit/linear_map.hpp"
#include "koszulkit/reduction_operator.hpp"
#include "koszulkit/presentation.hpp"
#include "koszulkit/graded_map.hpp"
#include "koszulkit/koszul.hpp"
