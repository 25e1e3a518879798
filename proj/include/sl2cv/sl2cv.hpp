#pragma once

#include "sl2cv/detection.hpp"
#include "sl2cv/families.hpp"
#include "sl2cv/fq.hpp"
#include "sl2cv/groups.hpp"
#include "sl2cv/mat2.hpp"
#include "sl2cv/oracle.hpp"
#include "sl2cv/ratfunc.hpp"
#include "sl2cv/word.hpp"
