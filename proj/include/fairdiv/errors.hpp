#ifndef FAIRDIV_ERRORS_HPP
#define FAIRDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairdiv {

/// A proven bound or construction invariant was breached at runtime. This is
/// always a bug, never an input problem; the CLI maps it to exit code 2.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// Input document rejected; message carries the path to the offending field.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace fairdiv

#endif
