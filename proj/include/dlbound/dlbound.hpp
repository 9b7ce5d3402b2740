#pragma once

#include "ball.hpp"
#include "bernoulli.hpp"
#include "bounds.hpp"
#include "certify.hpp"
#include "characters.hpp"
#include "harness.hpp"
#include "hurwitz.hpp"
#include "interval.hpp"
#include "lfun.hpp"
#include "number_theory.hpp"
