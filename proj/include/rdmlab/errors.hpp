#ifndef RDMLAB_ERRORS_HPP
#define RDMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdmlab {

/// Malformed `.trn`/JSON input or an invalid beats relation. `row`/`col` are
/// the 0-based team indices of the offending entry, or -1 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int row = -1, int col = -1)
      : std::runtime_error(what), row_(row), col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

/// A request exceeds a configured size cap (DP teams, search n, coalition size).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdmlab

#endif
