#pragma once

#include "expr/chart_expr.hpp"
#include "expr/gaussian.hpp"
#include "expr/monomial.hpp"
#include "expr/parse.hpp"
#include "expr/polynomial.hpp"
