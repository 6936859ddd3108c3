#pragma once

#include "proum/io.hpp"
#include "proum/matcher.hpp"
#include "proum/miner.hpp"
#include "proum/model.hpp"
#include "proum/oracle.hpp"
#include "proum/utility_array.hpp"
#include "proum/verify.hpp"
