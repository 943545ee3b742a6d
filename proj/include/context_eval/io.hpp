#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace context_eval {

// Write-temp-then-rename so readers never see a partial file.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);

std::string read_file(const std::filesystem::path& path);

}  // namespace context_eval
