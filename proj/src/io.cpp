#include "schedsim/io.hpp"

#include <fstream>

#include "schedsim/errors.hpp"

namespace schedsim {

void write_file_atomic(const std::filesystem::path& file, std::string_view content) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open '" + tmp.string() + "' for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw Error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace schedsim
