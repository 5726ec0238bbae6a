#pragma once

#include "hierprobe/embeddings.hpp"
#include "hierprobe/errors.hpp"
#include "hierprobe/evaluate.hpp"
#include "hierprobe/probe_io.hpp"
#include "hierprobe/probes.hpp"
#include "hierprobe/report.hpp"
#include "hierprobe/stats.hpp"
#include "hierprobe/taxonomy.hpp"
#include "hierprobe/taxonomy_io.hpp"
