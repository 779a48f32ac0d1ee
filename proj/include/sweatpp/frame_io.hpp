#pragma once

#include <string>

#include "sweatpp/changepoint.hpp"

namespace sweatpp {

// 8-bit binary PGM (P5), intensities scaled to [0,1] on load.
Image load_pgm(const std::string& path);
void save_pgm(const std::string& path, const Image& image);

// A stack is either a directory of P5 files taken in lexicographic order, or
// a JSON header {"T":..,"H":..,"W":..,"dtype":"u8"|"f32","file":..} naming a
// raw frame-major binary next to it.
FrameStack load_frame_stack(const std::string& path);

}  // namespace sweatpp
