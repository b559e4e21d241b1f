// Copyright 2026 The loge Authors. All Rights Reserved.
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

#ifndef LOGE_LOGE_HPP
#define LOGE_LOGE_HPP

#include "loge/core.hpp"
#include "loge/eval/classifier.hpp"
#include "loge/eval/linkpred.hpp"
#include "loge/eval/matching.hpp"
#include "loge/eval/metrics.hpp"
#include "loge/eval/scatter.hpp"
#include "loge/eval/synthetic.hpp"
#include "loge/graph.hpp"
#include "loge/model.hpp"
#include "loge/random.hpp"
#include "loge/status.hpp"
#include "loge/train.hpp"

#endif  // LOGE_LOGE_HPP
