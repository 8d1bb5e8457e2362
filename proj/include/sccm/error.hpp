#pragma once

#include <stdexcept>
#include <string>

namespace sccm {

// Bad arguments: dimension mismatches, out-of-range indices, short inputs.
class argument_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class lookup_error : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Integration left the finite-overflow guard.
class divergence_error : public std::runtime_error {
public:
  divergence_error(const std::string& what, long step)
      : std::runtime_error(what), step_(step) {}
  long step() const noexcept { return step_; }

private:
  long step_;
};

// Input carries no usable geometry (all points identical, zero variance).
class degenerate_input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class segment_too_small_error : public std::runtime_error {
public:
  segment_too_small_error(const std::string& what, long size)
      : std::runtime_error(what), size_(size) {}
  long size() const noexcept { return size_; }

private:
  long size_;
};

class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class unsupported_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace sccm
