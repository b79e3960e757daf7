#ifndef AFDG_DIAGRAM_IO_HPP
#define AFDG_DIAGRAM_IO_HPP

#include <optional>
#include <string>

#include "afdg/bratteli.hpp"

namespace afdg {

/// A parsed diagram file: the validated diagram plus its metadata.
struct DiagramFile {
  DiagramPtr diagram;
  std::optional<std::string> name;
  bool extend_repeat = false;
};

/// Line format (LF, UTF-8, '#' comments):
///
///   bratteli v1
///   name <identifier>          (optional)
///   level 1
///   <m_0 rows of m_1 integers>
///   level 2
///   ...
///   extend repeat | extend none   (optional; none when absent)
DiagramFile parse_diagram(const std::string& text);

/// Canonical form: header, optional name, level blocks with single
/// spaces, an explicit extend line, trailing newline. parse o serialize
/// is the identity; serialize o parse canonicalizes.
std::string serialize_diagram(const DiagramFile& file);

/// The diagram truncated or extended (by repeating the last matrix) to
/// exactly `levels` edge matrices.
DiagramPtr materialize(const DiagramFile& file, std::size_t levels);

} // namespace afdg

#endif
