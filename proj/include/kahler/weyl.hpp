#pragma once

#include "weyl/element.hpp"
#include "weyl/operators.hpp"
#include "weyl/products.hpp"
#include "weyl/random.hpp"
