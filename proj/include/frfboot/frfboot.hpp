#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/types.hpp"
#include "frfboot/transform.hpp"
#include "frfboot/stats.hpp"

#include "frfboot/prts.hpp"
#include "frfboot/transfer.hpp"
#include "frfboot/synth.hpp"

#include "frfboot/rng.hpp"
#include "frfboot/quantile.hpp"
#include "frfboot/bootstrap.hpp"
#include "frfboot/residual.hpp"
#include "frfboot/calibration.hpp"

#include "frfboot/number_format.hpp"
#include "frfboot/group_csv.hpp"
#include "frfboot/digest.hpp"
#include "frfboot/canonical_json.hpp"
#include "frfboot/result_json.hpp"
#include "frfboot/plot.hpp"
