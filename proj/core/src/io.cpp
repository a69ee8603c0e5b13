#include "tetsym/io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace tetsym::io {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

orbtri::DestinationSequence parse_dseq(std::string_view text) {
  using detail::json;
  json doc = detail::parse_json(text);
  std::string name = detail::as_string(detail::field(doc, "name", "$"), "$.name");
  long long n = detail::as_int(detail::field(doc, "n", "$"), "$.n");
  if (n <= 0) throw SchemaError("$.n: must be positive");
  const json& e = detail::array_at(detail::field(doc, "entries", "$"), 4 * n, "$.entries");
  std::vector<int> entries;
  entries.reserve(e.size());
  for (std::size_t k = 0; k < e.size(); ++k)
    entries.push_back(static_cast<int>(detail::as_int(e[k], "$.entries[" + std::to_string(k) + "]")));
  try {
    return orbtri::DestinationSequence(std::move(name), std::move(entries));
  } catch (const orbtri::InvalidSequence& ex) {
    throw SchemaError(std::string("$.entries: ") + ex.what());
  }
}

std::string to_json(const orbtri::DestinationSequence& seq) {
  detail::json doc = {{"name", seq.name()},
                      {"n", seq.size()},
                      {"entries", std::vector<int>(seq.entries().begin(), seq.entries().end())}};
  return doc.dump();
}

namespace {

template <class F>
auto load(const std::filesystem::path& path, F&& parse) {
  std::string text = read_text(path);
  try {
    return parse(text);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace

orbtri::DestinationSequence load_dseq(const std::filesystem::path& path) {
  return load(path, [](const std::string& t) { return parse_dseq(t); });
}

tetglue::TetTriangulation load_gluing_table(const std::filesystem::path& path) {
  return load(path, [](const std::string& t) { return tetglue::parse_gluing_table(t); });
}

cuspgeom::CuspDiagram load_diagram(const std::filesystem::path& path) {
  return load(path, [](const std::string& t) { return cuspgeom::parse_diagram(t); });
}

homology::IntMatrix load_matrix(const std::filesystem::path& path) {
  return load(path, [](const std::string& t) { return homology::parse_matrix(t); });
}

}  // namespace tetsym::io
