#pragma once

#include "toricmdp/cone.hpp"
#include "toricmdp/fan.hpp"
#include "toricmdp/fanfile.hpp"
#include "toricmdp/groebner.hpp"
#include "toricmdp/hull.hpp"
#include "toricmdp/indicial.hpp"
#include "toricmdp/linalg.hpp"
#include "toricmdp/mdp.hpp"
#include "toricmdp/numeric.hpp"
#include "toricmdp/oracle.hpp"
#include "toricmdp/report.hpp"
#include "toricmdp/series.hpp"
