#pragma once

#include "ucycle/gf.hpp"
#include "ucycle/linalg.hpp"
#include "ucycle/geometry.hpp"
#include "ucycle/cycles.hpp"
#include "ucycle/constructions.hpp"
#include "ucycle/grassmann.hpp"
#include "ucycle/verify.hpp"
