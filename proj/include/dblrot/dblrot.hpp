#pragma once

#include "dblrot/rational.hpp"
#include "dblrot/interval.hpp"
#include "dblrot/piecewise.hpp"
#include "dblrot/dynamics.hpp"
#include "dblrot/itm3.hpp"
#include "dblrot/double_rotation.hpp"
#include "dblrot/permutation.hpp"
#include "dblrot/induction.hpp"
#include "dblrot/simplicial.hpp"
#include "dblrot/experiments.hpp"
