#pragma once

#include <string_view>

// Published solutions in the assignment file format. They are parsed by the
// regular reader, so every catalog check runs through the same code path as
// user-supplied files.

namespace ringnet::catalog_data {

/// N_D at k = 3, n = 4: relays carry four coordinates, receivers read three.
/// Stored over Q to keep the -1 entries; it also holds over GF2 and GF3.
inline constexpr std::string_view kDigital34 = R"json({
  "ring": "Q",
  "k": 3,
  "n": 4,
  "entries": {
    "1->4": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0]],
    "1->6": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0]],
    "2->4": [[1, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 1]],
    "2->5": [[-1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
    "2->6": [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
    "3->5": [[1, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 1]],
    "3->6": [[1, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 1]],
    "3->11": [[-1, 0, 0], [0, 0, 0], [0, 0, 0]],
    "4->7": [[-1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    "4->8": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "5->8": [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
    "5->9": [[0, 0, 0, -1], [0, -1, 0, 0], [0, 0, -1, 0]],
    "6->7": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "6->9": [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]],
    "6->10": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1]],
    "8->10": [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, 1]],
    "8->11": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
  }
}
)json";

/// N_A at k = 3, n = 4 over a ring with 1 + 1 = 0. Edge 6->11 is the zero map.
inline constexpr std::string_view kAnalogue34 = R"json({
  "ring": "GF2",
  "k": 3,
  "n": 4,
  "entries": {
    "1->4": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
    "1->5": [[1, 0, 0], [0, 0, 0], [0, 0, 1], [0, 0, 0]],
    "1->6": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
    "2->4": [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
    "2->5": [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
    "2->7": [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]],
    "3->4": [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "3->6": [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "3->7": [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "4->8": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "4->9": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    "4->10": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
    "5->8": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "5->11": [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
    "6->9": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    "6->11": [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    "7->10": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
    "7->11": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
  }
}
)json";

/// N_A scalar solution with the halving edges into receiver 11. The 1/2
/// literals re-read as 2 over GF3 and as 3 over GF5.
inline constexpr std::string_view kAnalogueScalar = R"json({
  "ring": "Q",
  "k": 1,
  "n": 1,
  "entries": {
    "1->4": [[1]],
    "1->5": [[1]],
    "1->6": [[1]],
    "2->4": [[1]],
    "2->5": [[1]],
    "2->7": [[1]],
    "3->4": [[1]],
    "3->6": [[1]],
    "3->7": [[1]],
    "4->8": [[1]],
    "4->9": [[1]],
    "4->10": [[1]],
    "5->8": [[-1]],
    "5->11": [["-1/2"]],
    "6->9": [[-1]],
    "6->11": [["1/2"]],
    "7->10": [[-1]],
    "7->11": [["1/2"]]
  }
}
)json";

/// Simple satellite at k = 1, n = 2: the relay forwards both messages side by side.
inline constexpr std::string_view kSimpleSatellite12 = R"json({
  "ring": "GF2",
  "k": 1,
  "n": 2,
  "entries": {
    "1->3": [[1], [0]],
    "1->4": [[0]],
    "2->3": [[0], [1]],
    "3->4": [[0, 1]],
    "3->5": [[1, 0]]
  }
}
)json";

}  // namespace ringnet::catalog_data
