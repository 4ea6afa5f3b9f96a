#pragma once

#include "monoseg/bench.hpp"
#include "monoseg/ingest.hpp"
#include "monoseg/scale_label.hpp"
#include "monoseg/segment_select.hpp"
#include "monoseg/series.hpp"
#include "monoseg/synth.hpp"
#include "monoseg/topdown.hpp"
