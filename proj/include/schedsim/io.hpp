#pragma once

#include <filesystem>
#include <string_view>

namespace schedsim {

// Writes through a sibling temp file plus rename, so a reader never sees a
// half-written file and a failed run leaves no truncated output behind.
void write_file_atomic(const std::filesystem::path& file, std::string_view content);

}  // namespace schedsim
