#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

namespace repcli {

/// Every file a command produces goes through here. Files are written to a
/// temporary sibling and renamed into place, one at a time.
class OutputWriter {
public:
    explicit OutputWriter(std::filesystem::path dir);

    void write(const std::string& name, const std::string& content);

    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }
    [[nodiscard]] std::vector<std::string> written() const;

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    std::vector<std::string> written_;
};

}  // namespace repcli
