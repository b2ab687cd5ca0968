#pragma once

#include "obl/core.hpp"
#include "obl/rng.hpp"
#include "obl/preprocess.hpp"
#include "obl/feature_select.hpp"
#include "obl/opposition.hpp"
#include "obl/knn.hpp"
#include "obl/pipeline.hpp"
#include "obl/evaluation.hpp"
#include "obl/chi2.hpp"
#include "obl/rankstats.hpp"
#include "obl/csv.hpp"
#include "obl/config.hpp"
#include "obl/experiment.hpp"
