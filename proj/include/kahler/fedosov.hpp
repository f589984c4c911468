#pragma once

#include "fedosov/checks.hpp"
#include "fedosov/closed_form.hpp"
#include "fedosov/data.hpp"
#include "fedosov/equivalence.hpp"
#include "fedosov/fixed_point.hpp"
#include "fedosov/karabegov.hpp"
#include "fedosov/report.hpp"
#include "fedosov/series.hpp"
#include "fedosov/suites.hpp"
#include "fedosov/taylor.hpp"
