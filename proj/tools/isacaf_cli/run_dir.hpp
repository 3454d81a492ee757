// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cli {

/// Output directory written through a private staging directory. Files only
/// appear under the target once commit() succeeds; otherwise the staging
/// directory (and a target directory this object created) is removed.
class RunDir {
public:
    RunDir(std::filesystem::path target, bool force);
    ~RunDir();
    RunDir(const RunDir&) = delete;
    RunDir& operator=(const RunDir&) = delete;

    /// Staging path for a new output file; records the name for commit().
    std::filesystem::path file(const std::string& name);
    void write_text(const std::string& name, const std::string& content);

    const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    const std::filesystem::path& target() const noexcept { return target_; }

    void commit();

private:
    std::filesystem::path target_;
    std::filesystem::path staging_;
    std::vector<std::string> outputs_;
    bool force_;
    bool created_target_ = false;
    bool committed_ = false;
};

}  // namespace cli
