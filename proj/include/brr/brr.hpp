// Copyright 2026 The BRR Authors.
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

#pragma once

#include "brr/adapters.hpp"
#include "brr/closed_form.hpp"
#include "brr/core.hpp"
#include "brr/mechanisms.hpp"
#include "brr/metrics.hpp"
#include "brr/random.hpp"
#include "brr/search.hpp"
#include "brr/utility_io.hpp"
