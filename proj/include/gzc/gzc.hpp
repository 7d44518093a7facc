#pragma once

#include "gzc/errors.hpp"
#include "gzc/weyl.hpp"
#include "gzc/zipdatum.hpp"
#include "gzc/strata.hpp"
#include "gzc/field.hpp"
#include "gzc/fzip.hpp"
#include "gzc/classical.hpp"
#include "gzc/bt1.hpp"
