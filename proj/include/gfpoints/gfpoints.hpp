#pragma once

#include "gfpoints/errors.hpp"
#include "gfpoints/rational.hpp"
#include "gfpoints/multipoly.hpp"
#include "gfpoints/weierstrass.hpp"
#include "gfpoints/families.hpp"
#include "gfpoints/generator.hpp"
#include "gfpoints/search.hpp"
