// Copyright 2026 The initdet Authors.
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

#ifndef INITDET_TESTS_FIXTURES_H_
#define INITDET_TESTS_FIXTURES_H_

#include <sstream>
#include <string>

#include "initdet/corpus.h"

namespace initdet::fixtures {

// Seven sentences: a singleton at index 1 and a four-sentence initiative at
// indices 2..5.
inline const char *kSevenSentenceReport =
    R"({"report_id": "NRGUS2015", "index": 0, "text": "Our company operates power plants across the country.", "initiative_id": null}
{"report_id": "NRGUS2015", "index": 1, "text": "We installed solar panels at 40 schools.", "initiative_id": "NRGUS201501"}
{"report_id": "NRGUS2015", "index": 2, "text": "In 2015 we launched a volunteering program for employees.", "initiative_id": "NRGUS201502"}
{"report_id": "NRGUS2015", "index": 3, "text": "Staff spent over 10,000 hours in local communities.", "initiative_id": "NRGUS201502"}
{"report_id": "NRGUS2015", "index": 4, "text": "The program focused on environmental education.", "initiative_id": "NRGUS201502"}
{"report_id": "NRGUS2015", "index": 5, "text": "It will be extended to all regions next year.", "initiative_id": "NRGUS201502"}
{"report_id": "NRGUS2015", "index": 6, "text": "Financial results are presented in the annual report.", "initiative_id": null}
)";

inline Corpus SevenSentenceCorpus() {
  std::istringstream in(kSevenSentenceReport);
  return ParseCorpus(in);
}

inline Corpus ParseString(const std::string &text) {
  std::istringstream in(text);
  return ParseCorpus(in);
}

}  // namespace initdet::fixtures

#endif  // INITDET_TESTS_FIXTURES_H_
