#pragma once

#include "dswkit/checks.hpp"
#include "dswkit/closed_forms.hpp"
#include "dswkit/config.hpp"
#include "dswkit/contour.hpp"
#include "dswkit/errors.hpp"
#include "dswkit/io.hpp"
#include "dswkit/oracles.hpp"
#include "dswkit/params.hpp"
#include "dswkit/roots.hpp"
#include "dswkit/utm.hpp"
