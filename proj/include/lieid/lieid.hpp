#pragma once

#include "config.hpp"
#include "expr.hpp"
#include "gf2.hpp"
#include "gl2.hpp"
#include "lemmas.hpp"
#include "lie.hpp"
#include "tideal.hpp"
#include "word.hpp"
