#pragma once

#include "hkit/comm_poly.hpp"
#include "hkit/error.hpp"
#include "hkit/exact_matrix.hpp"
#include "hkit/gauss_rat.hpp"
#include "hkit/generators.hpp"
#include "hkit/json_io.hpp"
#include "hkit/nc_calculus.hpp"
#include "hkit/quasihom.hpp"
#include "hkit/splitting.hpp"
#include "hkit/text.hpp"
#include "hkit/univariate.hpp"
