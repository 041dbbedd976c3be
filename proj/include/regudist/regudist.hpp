#pragma once

#include "regudist/angular.hpp"
#include "regudist/arrangement.hpp"
#include "regudist/bipoly.hpp"
#include "regudist/delta_sequence.hpp"
#include "regudist/distributions.hpp"
#include "regudist/game.hpp"
#include "regudist/geometry.hpp"
#include "regudist/io.hpp"
#include "regudist/parallel.hpp"
#include "regudist/polynomial.hpp"
#include "regudist/quadrature.hpp"
#include "regudist/regulated1d.hpp"
#include "regudist/regulated2d.hpp"
#include "regudist/scalar.hpp"
