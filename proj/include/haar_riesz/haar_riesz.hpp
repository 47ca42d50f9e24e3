#pragma once

#include "haar_riesz/constants.hpp"
#include "haar_riesz/counterexample.hpp"
#include "haar_riesz/errors.hpp"
#include "haar_riesz/gram.hpp"
#include "haar_riesz/haar.hpp"
#include "haar_riesz/jacobi.hpp"
#include "haar_riesz/ldlt.hpp"
#include "haar_riesz/measure.hpp"
#include "haar_riesz/rational.hpp"
#include "haar_riesz/search.hpp"
#include "haar_riesz/weights.hpp"
