#pragma once

#include "gabspline/rational.hpp"
#include "gabspline/polynomial.hpp"
#include "gabspline/bspline.hpp"
#include "gabspline/zak.hpp"
#include "gabspline/singular.hpp"
#include "gabspline/zibulski_zeevi.hpp"
#include "gabspline/framesets.hpp"
#include "gabspline/json_io.hpp"
