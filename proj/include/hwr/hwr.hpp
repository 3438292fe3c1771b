// Copyright 2026 The dhbn-hwr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "hwr/config.hpp"
#include "hwr/dataset.hpp"
#include "hwr/dhbn.hpp"
#include "hwr/error.hpp"
#include "hwr/features.hpp"
#include "hwr/image.hpp"
#include "hwr/imaging.hpp"
#include "hwr/persist.hpp"
#include "hwr/pipeline.hpp"
#include "hwr/quantize.hpp"
#include "hwr/random.hpp"
#include "hwr/report.hpp"
#include "hwr/synth.hpp"
