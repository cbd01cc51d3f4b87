#pragma once

#include "hdc/assoc_memory.hpp"
#include "hdc/dataset.hpp"
#include "hdc/encoders.hpp"
#include "hdc/error.hpp"
#include "hdc/harness.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/item_memory.hpp"
#include "hdc/kernels.hpp"
#include "hdc/model_io.hpp"
#include "hdc/op_counter.hpp"
#include "hdc/parallel.hpp"
#include "hdc/pipeline.hpp"
#include "hdc/random.hpp"
