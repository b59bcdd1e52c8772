// Copyright 2026 The secnc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Umbrella header.

#pragma once

#include "secnc/errors.hpp"
#include "secnc/galois.hpp"
#include "secnc/lifting.hpp"
#include "secnc/network.hpp"
#include "secnc/rate_region.hpp"
#include "secnc/scheme.hpp"
#include "secnc/security.hpp"
#include "secnc/serialization.hpp"
#include "secnc/subsets.hpp"
