#pragma once

#include <stdexcept>
#include <string>

namespace tetsym {

// Input that is not well-formed JSON or does not follow a file schema. The
// message names the JSON path (and file, when loaded from disk).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tetsym
