#pragma once

// Umbrella header: the full notebook-linting library.

#include "nblint/checks.hpp"
#include "nblint/code_analysis.hpp"
#include "nblint/config.hpp"
#include "nblint/corpus.hpp"
#include "nblint/engine.hpp"
#include "nblint/finding.hpp"
#include "nblint/manifests.hpp"
#include "nblint/metrics.hpp"
#include "nblint/notebook.hpp"
#include "nblint/python_scan.hpp"
#include "nblint/render.hpp"
#include "nblint/repository.hpp"
#include "nblint/rules.hpp"
#include "nblint/stats.hpp"
#include "nblint/version.hpp"
