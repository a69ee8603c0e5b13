#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tetsym/cuspgeom.hpp"
#include "tetsym/errors.hpp"
#include "tetsym/homology.hpp"
#include "tetsym/orbtri.hpp"
#include "tetsym/tetglue.hpp"

namespace tetsym::io {

std::string read_text(const std::filesystem::path& path);

// {"name": str, "n": int, "entries": [int x 4n]}
orbtri::DestinationSequence parse_dseq(std::string_view text);
std::string to_json(const orbtri::DestinationSequence& seq);

// File loaders; schema errors are re-thrown with the file name prepended.
orbtri::DestinationSequence load_dseq(const std::filesystem::path& path);
tetglue::TetTriangulation load_gluing_table(const std::filesystem::path& path);
cuspgeom::CuspDiagram load_diagram(const std::filesystem::path& path);
homology::IntMatrix load_matrix(const std::filesystem::path& path);

}  // namespace tetsym::io
