#pragma once

// Bundled inputs. The genus-2 document mirrors data/genus2.json.

#include <string>
#include <string_view>

#include "presentation.hpp"

namespace solhp {

inline constexpr std::string_view kGenus2Json = R"json(
{
  "disc": 21,
  "genus": 2,
  "num_sing": 2,
  "lambda": "(5+1*r)/2",
  "phi_word_order": "right-to-left",
  "phi": {
    "a1": "a1 b1' d1' a2 b2 a2' a2' a1 a1 b1'",
    "a2": "a2 a2 b2' a2 a2 b2' a2' d1 b1 a1'",
    "b1": "b1 a1'",
    "b2": "a1 b1' d1' a2 b2 a2' a2' b2 a2 b2' a2' d1' b1 a1'",
    "d1": "d1",
    "d2": "a2 b2 a2' a2' a1 b1' d1' d2 d1 b1 a1' a2 a2 b2' a2'"
  },
  "mu_u": ["(3+1*r)/2", "(-3-1*r)/2", "-1", "1", "0", "0"],
  "mu_s": ["(3-1*r)/2", "(-3+1*r)/2", "-1", "1", "0", "0"]
}
)json";

inline MappingTorusInput genus2_fixture() { return parse_input(kGenus2Json); }

inline bool has_fixture(const std::string& name) { return name == "genus2"; }

inline MappingTorusInput load_fixture(const std::string& name) {
  if (name == "genus2") return genus2_fixture();
  throw Error(ErrorKind::Parse, "presentation", "fixture", "unknown fixture \"" + name + "\"");
}

}  // namespace solhp
