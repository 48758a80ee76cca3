#pragma once

#include "stochprice/error.hpp"
#include "stochprice/evaluation.hpp"
#include "stochprice/infotheory.hpp"
#include "stochprice/io.hpp"
#include "stochprice/market_data.hpp"
#include "stochprice/model_fitting.hpp"
#include "stochprice/random.hpp"
#include "stochprice/sim_birthdeath.hpp"
#include "stochprice/sim_normal.hpp"
#include "stochprice/version.hpp"
