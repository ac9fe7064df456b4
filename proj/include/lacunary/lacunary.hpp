#pragma once

#include "decompose.hpp"
#include "dense_poly.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "lattice.hpp"
#include "limits.hpp"
#include "param_enum.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "sparse_poly.hpp"
#include "wronskian.hpp"
