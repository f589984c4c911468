#pragma once

#include "chart/chart.hpp"
#include "chart/connection.hpp"
#include "chart/curvature.hpp"
#include "chart/forms.hpp"
