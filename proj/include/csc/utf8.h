//
// Copyright 2026 The CSC Toolkit Authors
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
//

#ifndef CSC_UTF8_H_
#define CSC_UTF8_H_

#include <string>
#include <string_view>

namespace csc {

// Strict UTF-8 decoding. Throws csc::Error on invalid sequences,
// overlong forms and surrogates.
std::u32string utf8_decode(std::string_view bytes);

std::string utf8_encode(std::u32string_view text);
std::string utf8_encode(char32_t c);

// CJK unified ideographs (basic block plus extensions A-F and the
// compatibility block).
bool is_han(char32_t c);

}  // namespace csc

#endif  // CSC_UTF8_H_
