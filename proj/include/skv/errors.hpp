#pragma once

#include <stdexcept>
#include <string>

namespace skv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// A configured size bound (cyclotomic order cap, group order cap) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed fixture or input document. `path` points at the offending field.
class FixtureError : public Error {
public:
    FixtureError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// An exact identity that must hold failed; indicates an arithmetic bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace skv
