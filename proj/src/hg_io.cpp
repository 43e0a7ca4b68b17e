#include "hx/hg_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hx/error.hpp"

namespace hx {

namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r') {
      ++pos;
      continue;
    }
    std::uint64_t value = 0;
    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) throw ParseError(line_no, "expected a decimal integer");
    if (ptr != end && *ptr != ' ' && *ptr != '\t' && *ptr != '\r') {
      throw ParseError(line_no, "unexpected character '" + std::string(1, *ptr) + "'");
    }
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

Hypergraph parse_json(std::string_view text, const HgReadOptions& options,
                      std::vector<std::string>* comments) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("r") || !doc.contains("edges")) {
    fail(ErrorKind::FormatViolation, "JSON hypergraph needs keys n, r, edges");
  }
  const auto n = doc.at("n").get<std::uint32_t>();
  const auto r = doc.at("r").get<std::uint32_t>();
  const std::uint32_t shift = options.one_based ? 1 : 0;
  std::vector<std::vector<Vertex>> raw;
  for (const auto& edge : doc.at("edges")) {
    std::vector<Vertex> e;
    for (const auto& v : edge) {
      const auto x = v.get<std::uint32_t>();
      if (x < shift) fail(ErrorKind::VertexOutOfRange, "vertex 0 in a 1-based file");
      e.push_back(x - shift);
    }
    raw.push_back(std::move(e));
  }
  if (comments != nullptr && doc.contains("comments")) {
    for (const auto& c : doc.at("comments")) comments->push_back(c.get<std::string>());
  }
  return canonicalize(raw, n, r);
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text, const HgReadOptions& options,
                            std::vector<std::string>* comments) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text, options, comments);

  if (text.empty() || text.back() != '\n') fail(ErrorKind::FormatViolation, "missing trailing newline");

  bool have_header = false;
  std::uint64_t n = 0, r = 0, m = 0;
  std::vector<std::vector<Vertex>> raw;
  const std::uint64_t shift = options.one_based ? 1 : 0;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t stop = text.find('\n', start);
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (!line.empty() && line.front() == '#') {
      if (comments != nullptr) {
        line.remove_prefix(1);
        if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        comments->emplace_back(line);
      }
      continue;
    }
    const std::vector<std::uint64_t> numbers = parse_numbers(line, line_no);
    if (!have_header) {
      if (numbers.size() != 3) throw ParseError(line_no, "header must be `n r m`");
      n = numbers[0];
      r = numbers[1];
      m = numbers[2];
      if (n > 0xffffffffULL || r > n) throw ParseError(line_no, "header has r > n or n too large");
      have_header = true;
      continue;
    }
    if (numbers.size() != r) {
      throw ParseError(line_no, "edge has " + std::to_string(numbers.size()) + " vertices, expected " +
                                    std::to_string(r));
    }
    std::vector<Vertex> edge;
    edge.reserve(numbers.size());
    for (std::size_t i = 0; i < numbers.size(); ++i) {
      if (numbers[i] < shift || numbers[i] - shift >= n) throw ParseError(line_no, "vertex out of range");
      if (i > 0 && numbers[i] <= numbers[i - 1]) throw ParseError(line_no, "vertices must be strictly increasing");
      edge.push_back(static_cast<Vertex>(numbers[i] - shift));
    }
    raw.push_back(std::move(edge));
  }
  if (!have_header) fail(ErrorKind::FormatViolation, "missing `n r m` header");
  if (raw.size() != m) {
    fail(ErrorKind::FormatViolation,
         "header claims " + std::to_string(m) + " edges but file has " + std::to_string(raw.size()));
  }
  return canonicalize(raw, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(r));
}

std::string format_hypergraph(const Hypergraph& h, const HgWriteOptions& options) {
  const Vertex shift = options.one_based ? 1 : 0;
  if (options.format == GraphFormat::Json) {
    nlohmann::ordered_json doc;
    if (!options.comments.empty()) doc["comments"] = options.comments;
    doc["n"] = h.n();
    doc["r"] = h.r();
    auto edges = nlohmann::ordered_json::array();
    for (const VertexSet& e : h.edges()) {
      auto list = nlohmann::ordered_json::array();
      e.for_each([&](Vertex v) { list.push_back(v + shift); });
      edges.push_back(std::move(list));
    }
    doc["edges"] = std::move(edges);
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  for (const std::string& c : options.comments) out << "# " << c << '\n';
  out << h.n() << ' ' << h.r() << ' ' << h.size() << '\n';
  for (const VertexSet& e : h.edges()) {
    bool first = true;
    e.for_each([&](Vertex v) {
      if (!first) out << ' ';
      out << v + shift;
      first = false;
    });
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

Hypergraph read_hypergraph(const std::filesystem::path& path, const HgReadOptions& options,
                           std::vector<std::string>* comments) {
  return parse_hypergraph(read_text_file(path), options, comments);
}

void write_hypergraph(const Hypergraph& h, const std::filesystem::path& path, const HgWriteOptions& options) {
  write_text_file(path, format_hypergraph(h, options));
}

}  // namespace hx
