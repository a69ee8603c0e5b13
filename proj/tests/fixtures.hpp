#pragma once

#include <filesystem>
#include <string>

#ifndef TETSYM_FIXTURE_DIR
#error "TETSYM_FIXTURE_DIR must point at the committed fixtures"
#endif

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(TETSYM_FIXTURE_DIR) / rel;
}

inline const char* const kCensus[] = {"otet04_00001", "otet08_00002", "otet12_00009",
                                      "otet20_00049", "otet20_00059", "otet20_00062",
                                      "otet20_00063"};
