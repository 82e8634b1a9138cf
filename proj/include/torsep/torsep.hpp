#pragma once

#include "torsep/number.hpp"
#include "torsep/error.hpp"
#include "torsep/linalg.hpp"
#include "torsep/lp.hpp"
#include "torsep/binomial.hpp"
#include "torsep/certificate.hpp"
#include "torsep/cone.hpp"
#include "torsep/verdict.hpp"
#include "torsep/strata.hpp"
#include "torsep/decider.hpp"
#include "torsep/ideal.hpp"
#include "torsep/binary_forms.hpp"
#include "torsep/report.hpp"
