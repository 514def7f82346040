// Copyright 2026 The codemeta Authors.
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

// Library umbrella. service.hpp (HTTP) is not included; it pulls in httplib.

#pragma once

#include "codemeta/dictionary.hpp"
#include "codemeta/error.hpp"
#include "codemeta/interface_parser.hpp"
#include "codemeta/matcher.hpp"
#include "codemeta/metadata_reader.hpp"
#include "codemeta/metadata_script.hpp"
#include "codemeta/tokenizer.hpp"
