// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "phonoq/baseline.hpp"
#include "phonoq/config.hpp"
#include "phonoq/ctc.hpp"
#include "phonoq/decode.hpp"
#include "phonoq/edit_align.hpp"
#include "phonoq/error.hpp"
#include "phonoq/feature_table.hpp"
#include "phonoq/features.hpp"
#include "phonoq/frames.hpp"
#include "phonoq/io.hpp"
#include "phonoq/logits.hpp"
#include "phonoq/manifest.hpp"
#include "phonoq/metrics.hpp"
#include "phonoq/model.hpp"
#include "phonoq/phoneset.hpp"
#include "phonoq/report.hpp"
#include "phonoq/rng.hpp"
#include "phonoq/synth.hpp"
#include "phonoq/textgrid.hpp"
#include "phonoq/utf8.hpp"
#include "phonoq/version.hpp"
