#include "afdg/diagram_io.hpp"

#include <sstream>
#include <vector>

namespace afdg {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  raise(errc::parse_error, "line " + std::to_string(line) + ": " + reason);
}

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::size_t begin = raw.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    std::size_t end = raw.find_last_not_of(" \t");
    lines.push_back(Line{number, raw.substr(begin, end - begin + 1)});
  }
  return lines;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string word;
  while (in >> word) parts.push_back(word);
  return parts;
}

Int parse_int(const std::string& token, std::size_t line) {
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    if (c >= '0' && c <= '9') continue;
    if (i == 0 && c == '-') continue;
    parse_fail(line, "not an integer: '" + token + "'");
  }
  if (token.empty() || token == "-") parse_fail(line, "empty integer");
  return Int(token);
}

} // namespace

DiagramFile parse_diagram(const std::string& text) {
  std::vector<Line> lines = significant_lines(text);
  std::size_t i = 0;
  auto need = [&](const char* what) -> const Line& {
    if (i >= lines.size())
      parse_fail(lines.empty() ? 1 : lines.back().number + 1,
                 std::string("expected ") + what);
    return lines[i];
  };

  if (need("'bratteli v1' header").text != "bratteli v1")
    parse_fail(lines[i].number, "expected 'bratteli v1' header");
  ++i;

  DiagramFile file;
  if (i < lines.size() && lines[i].text.rfind("name ", 0) == 0) {
    file.name = lines[i].text.substr(5);
    ++i;
  }

  std::vector<IntMatrix> matrices;
  std::size_t prev_cols = 1;
  while (i < lines.size() && lines[i].text.rfind("level ", 0) == 0) {
    const Line& header = lines[i];
    auto parts = split_ws(header.text);
    if (parts.size() != 2) parse_fail(header.number, "malformed level header");
    Int level = parse_int(parts[1], header.number);
    if (level != Int(matrices.size() + 1))
      parse_fail(header.number,
                 "levels must be consecutive starting at 1; expected level " +
                     std::to_string(matrices.size() + 1));
    ++i;
    std::vector<std::vector<Int>> rows;
    std::size_t cols = 0;
    for (std::size_t row = 0; row < prev_cols; ++row) {
      const Line& entry = need("a matrix row");
      if (entry.text.rfind("level ", 0) == 0 ||
          entry.text.rfind("extend", 0) == 0)
        parse_fail(entry.number, "matrix at level " +
                                     std::to_string(matrices.size() + 1) +
                                     " is missing rows (edge section empty)");
      auto tokens = split_ws(entry.text);
      std::vector<Int> values;
      for (const std::string& t : tokens)
        values.push_back(parse_int(t, entry.number));
      if (row == 0) {
        cols = values.size();
        if (cols == 0) parse_fail(entry.number, "empty matrix row");
      } else if (values.size() != cols) {
        parse_fail(entry.number, "ragged matrix row");
      }
      rows.push_back(std::move(values));
      ++i;
    }
    IntMatrix m(prev_cols, cols);
    for (std::size_t r = 0; r < prev_cols; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    matrices.push_back(std::move(m));
    prev_cols = cols;
  }
  if (matrices.empty())
    parse_fail(lines.empty() ? 1 : lines.back().number,
               "diagram has no levels");

  if (i < lines.size()) {
    const Line& tail = lines[i];
    if (tail.text == "extend repeat")
      file.extend_repeat = true;
    else if (tail.text == "extend none")
      file.extend_repeat = false;
    else
      parse_fail(tail.number, "unexpected trailing line '" + tail.text + "'");
    ++i;
  }
  if (i < lines.size())
    parse_fail(lines[i].number, "unexpected content after extend line");

  BratteliDiagram diagram(std::move(matrices));
  if (auto defect = validate(diagram))
    raise(errc::invalid_diagram, defect->message);
  if (file.extend_repeat) {
    const IntMatrix& last = diagram.edges(diagram.num_levels());
    if (last.rows() != last.cols())
      raise(errc::invalid_diagram,
            "extend repeat requires a square last matrix");
  }
  file.diagram = std::make_shared<const BratteliDiagram>(std::move(diagram));
  return file;
}

std::string serialize_diagram(const DiagramFile& file) {
  std::ostringstream os;
  os << "bratteli v1\n";
  if (file.name) os << "name " << *file.name << '\n';
  const BratteliDiagram& d = *file.diagram;
  for (std::size_t n = 1; n <= d.num_levels(); ++n) {
    os << "level " << n << '\n';
    const IntMatrix& m = d.edges(n);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) os << ' ';
        os << m.at(i, j);
      }
      os << '\n';
    }
  }
  os << (file.extend_repeat ? "extend repeat" : "extend none") << '\n';
  return os.str();
}

DiagramPtr materialize(const DiagramFile& file, std::size_t levels) {
  const BratteliDiagram& d = *file.diagram;
  std::vector<IntMatrix> matrices;
  for (std::size_t n = 1; n <= std::min(levels, d.num_levels()); ++n)
    matrices.push_back(d.edges(n));
  if (matrices.size() < levels) {
    if (!file.extend_repeat)
      raise(errc::level_unavailable,
            "diagram has " + std::to_string(d.num_levels()) +
                " levels and no extension rule");
    while (matrices.size() < levels) matrices.push_back(matrices.back());
  }
  return BratteliDiagram::make(std::move(matrices));
}

} // namespace afdg
