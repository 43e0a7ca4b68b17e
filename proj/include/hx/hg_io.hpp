#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hx/hypergraph.hpp"

namespace hx {

enum class GraphFormat { Hg, Json };

struct HgReadOptions {
  /// Vertices in the file are 1-based ([n] convention); shifted down on read.
  bool one_based = false;
};

struct HgWriteOptions {
  GraphFormat format = GraphFormat::Hg;
  bool one_based = false;
  /// Emitted as `# ...` lines ahead of the header (or a "comments" array in JSON).
  std::vector<std::string> comments;
};

// `.hg` text format:
//   n r m
//   v_1 v_2 ... v_r      (m lines, strictly increasing, space separated)
// Lines starting with '#' are comments; the file must end with a newline.
// A JSON mirror {"n":..,"r":..,"edges":[[..],..]} is detected by a leading '{'.

Hypergraph parse_hypergraph(std::string_view text, const HgReadOptions& options = {},
                            std::vector<std::string>* comments = nullptr);
std::string format_hypergraph(const Hypergraph& h, const HgWriteOptions& options = {});

Hypergraph read_hypergraph(const std::filesystem::path& path, const HgReadOptions& options = {},
                           std::vector<std::string>* comments = nullptr);
void write_hypergraph(const Hypergraph& h, const std::filesystem::path& path,
                      const HgWriteOptions& options = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hx
