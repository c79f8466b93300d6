#pragma once

#include "cobcalc/element_parser.hpp"
#include "cobcalc/fgl.hpp"
#include "cobcalc/group_actions.hpp"
#include "cobcalc/json_io.hpp"
#include "cobcalc/operations.hpp"
#include "cobcalc/quotient.hpp"
#include "cobcalc/render.hpp"
#include "cobcalc/scalar.hpp"
#include "cobcalc/series.hpp"
#include "cobcalc/verify.hpp"
