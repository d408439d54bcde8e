#pragma once

#include <stdexcept>
#include <string>

namespace spiralflow {

// Parameters lie outside the existence region: no periodic profile exists.
struct NoSolution : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameters sit exactly on the existence boundary: the profile degenerates
// to a constant, which belongs to the n = 0 comparator family instead.
struct DegenerateProfile : std::domain_error {
    using std::domain_error::domain_error;
};

// A construction-time self-check failed (root-finder drift or inconsistent
// inputs); indicates a bug rather than bad user input.
struct InternalInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure carrying the offending path.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& path, const std::string& what)
        : std::runtime_error(what + ": " + path), path(path) {}
    std::string path;
};

}  // namespace spiralflow
