#include "output.hpp"

#include <fmt/format.h>

#include <fstream>

#include "coinecon/errors.hpp"

namespace repcli {

OutputWriter::OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw coinecon::InputError(fmt::format("{}: cannot create output directory ({})", dir_.string(),
                                               ec.message()));
    }
}

void OutputWriter::write(const std::string& name, const std::string& content) {
    const std::lock_guard lock(mutex_);
    const auto target = dir_ / name;
    const auto tmp = dir_ / (name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw coinecon::InputError(fmt::format("{}: cannot write", tmp.string()));
        out << content;
        if (!out.flush()) throw coinecon::InputError(fmt::format("{}: write failed", tmp.string()));
    }
    std::filesystem::rename(tmp, target);
    written_.push_back(name);
}

std::vector<std::string> OutputWriter::written() const {
    const std::lock_guard lock(mutex_);
    return written_;
}

}  // namespace repcli
