// Copyright 2026 The atomicmaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header for the library. The CLI lives in atomicmaps/cli.hpp and
// is not included here.

#include "atomicmaps/errors.hpp"
#include "atomicmaps/numkernel.hpp"
#include "atomicmaps/posmaps.hpp"
#include "atomicmaps/choiduality.hpp"
#include "atomicmaps/states.hpp"
#include "atomicmaps/detect.hpp"
#include "atomicmaps/matrix_io.hpp"
#include "atomicmaps/region_output.hpp"
