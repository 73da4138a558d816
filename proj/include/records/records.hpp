#pragma once

#include "records/closed_forms.hpp"
#include "records/errors.hpp"
#include "records/experiment.hpp"
#include "records/families.hpp"
#include "records/model.hpp"
#include "records/monte_carlo.hpp"
#include "records/oracle.hpp"
#include "records/rational.hpp"
#include "records/report.hpp"
#include "records/rng.hpp"
