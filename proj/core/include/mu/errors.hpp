#pragma once

#include <stdexcept>
#include <string>

namespace mu {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Parse-time failures carry the 1-based line number of the offending record.
class MalformedRecord : public Error {
public:
  MalformedRecord(const std::string& what, long line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

class MissingSection : public Error {
public:
  explicit MissingSection(const std::string& section)
      : Error("missing section: " + section) {}
};

class DanglingBond : public Error {
public:
  using Error::Error;
};

class DegenerateAxis : public Error {
public:
  using Error::Error;
};

class EmptyChain : public Error {
public:
  EmptyChain() : Error("empty rotation chain") {}
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class ZeroBaseline : public Error {
public:
  ZeroBaseline() : Error("volume gain undefined for non-positive baseline") {}
};

class InvalidDiscretization : public Error {
public:
  explicit InvalidDiscretization(int d)
      : Error("angle discretization requires d >= 2, got " + std::to_string(d)) {}
};

class UnboundVariable : public Error {
public:
  using Error::Error;
};

class TooManyVariables : public Error {
public:
  using Error::Error;
};

class NoFeasibleSample : public Error {
public:
  NoFeasibleSample() : Error("sample set contains no feasible solution") {}
};

}  // namespace mu
