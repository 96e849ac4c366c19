#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grbm {

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_file(const std::string& path);

}  // namespace grbm
