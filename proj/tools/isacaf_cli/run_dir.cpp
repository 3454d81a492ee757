// SPDX-License-Identifier: Apache-2.0
#include "run_dir.hpp"

#include "handles.hpp"

#include <algorithm>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace fs = std::filesystem;

namespace cli {

RunDir::RunDir(fs::path target, bool force) : target_(std::move(target)), force_(force) {
    if (target_.empty()) throw Failure(kValidation, "--out is required");
    std::error_code ec;
    if (fs::exists(target_, ec)) {
        if (!fs::is_directory(target_, ec)) throw Failure(kValidation, target_.string() + " is not a directory");
    } else {
        fs::create_directories(target_, ec);
        if (ec) throw Failure(kValidation, "cannot create " + target_.string() + ": " + ec.message());
        created_target_ = true;
    }
    staging_ = target_ / (".staging-" + std::to_string(::getpid()));
    fs::remove_all(staging_, ec);
    fs::create_directory(staging_, ec);
    if (ec) throw Failure(kValidation, "cannot create " + staging_.string() + ": " + ec.message());
}

RunDir::~RunDir() {
    std::error_code ec;
    fs::remove_all(staging_, ec);
    if (!committed_ && created_target_ && fs::is_empty(target_, ec)) fs::remove(target_, ec);
}

fs::path RunDir::file(const std::string& name) {
    if (std::find(outputs_.begin(), outputs_.end(), name) != outputs_.end())
        throw Failure(kValidation, "duplicate output " + name);
    if (!force_ && fs::exists(target_ / name))
        throw Failure(kValidation, (target_ / name).string() + " exists (use --force to overwrite)");
    outputs_.push_back(name);
    return staging_ / name;
}

void RunDir::write_text(const std::string& name, const std::string& content) {
    const auto path = file(name);
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f.flush()) throw Failure(kValidation, "cannot write " + path.string());
}

void RunDir::commit() {
    for (const auto& name : outputs_) {
        std::error_code ec;
        fs::rename(staging_ / name, target_ / name, ec);
        if (ec) throw Failure(kValidation, "cannot move " + name + " into " + target_.string() + ": " + ec.message());
    }
    committed_ = true;
}

}  // namespace cli
