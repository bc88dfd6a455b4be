#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scenedesc {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document violates the declared JSON/file schema (missing or extra
// field, wrong type).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A structurally well-formed document violates a semantic invariant
// (dangling edge id, saliency out of range, unknown relation name).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Textual input could not be parsed; carries the character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

// A line-oriented file (grammar, corpus) is malformed; carries the line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

class MissingCuboidError : public Error {
 public:
  using Error::Error;
};

// No translation rule covers a parse subtree; callers count and skip.
class UntranslatableError : public Error {
 public:
  using Error::Error;
};

class RealizeError : public Error {
 public:
  using Error::Error;
};

class MissingTemplateError : public RealizeError {
 public:
  explicit MissingTemplateError(const std::string& relation)
      : RealizeError("no template for relation '" + relation + "'"),
        relation_(relation) {}
  const std::string& relation() const { return relation_; }

 private:
  std::string relation_;
};

class ArityMismatchError : public RealizeError {
 public:
  ArityMismatchError(const std::string& relation, int expected, int found)
      : RealizeError("relation '" + relation + "' expects arity " +
                     std::to_string(expected) + ", tree node has " +
                     std::to_string(found) + " children"),
        relation_(relation), expected_(expected), found_(found) {}
  const std::string& relation() const { return relation_; }
  int expected() const { return expected_; }
  int found() const { return found_; }

 private:
  std::string relation_;
  int expected_ = 0;
  int found_ = 0;
};

class NoViableObjectError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class InvalidNError : public Error {
 public:
  using Error::Error;
};

}  // namespace scenedesc
