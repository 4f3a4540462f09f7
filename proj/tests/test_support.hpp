#pragma once

#include <filesystem>
#include <random>
#include <string>

#ifndef HOTTOPICS_TEST_DATA_DIR
#error "HOTTOPICS_TEST_DATA_DIR must be defined"
#endif

namespace testing {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(HOTTOPICS_TEST_DATA_DIR) / name;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("hottopics-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

}  // namespace testing
