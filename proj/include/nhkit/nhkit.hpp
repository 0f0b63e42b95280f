#pragma once

#include "vec2.hpp"
#include "algebra.hpp"
#include "group.hpp"
#include "coadjoint.hpp"
#include "dynamics.hpp"
#include "funcspace.hpp"
#include "representations.hpp"
#include "moyal.hpp"
#include "io.hpp"
#include "verify.hpp"
#include "cli.hpp"
