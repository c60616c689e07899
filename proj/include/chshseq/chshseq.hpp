#pragma once

#include "chshseq/chsh.hpp"
#include "chshseq/errors.hpp"
#include "chshseq/linalg.hpp"
#include "chshseq/montecarlo.hpp"
#include "chshseq/observables.hpp"
#include "chshseq/optimizer.hpp"
#include "chshseq/parallel.hpp"
#include "chshseq/report.hpp"
#include "chshseq/scenario_io.hpp"
#include "chshseq/sequential.hpp"
