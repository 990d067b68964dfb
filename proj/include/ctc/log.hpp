// Copyright 2026 The ctcsim Authors
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

#include <functional>
#include <string_view>

namespace ctc::log {

using Sink = std::function<void(std::string_view)>;

// Numeric diagnostics (hermiticity drift and the like). The default sink
// writes to stderr when CTC_LOG is set in the environment and drops the
// message otherwise.
void warn(std::string_view message);

// Returns the previous sink. Passing an empty function restores the default.
Sink set_sink(Sink sink);

}  // namespace ctc::log
