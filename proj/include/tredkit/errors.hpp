#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tredkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotStronglyConnected : public Error {
 public:
  NotStronglyConnected() : Error("graph is not strongly connected") {}
};

class NotAcyclic : public Error {
 public:
  NotAcyclic() : Error("graph is not acyclic") {}
};

class ArcNotInGraph : public Error {
 public:
  explicit ArcNotInGraph(std::size_t arc)
      : Error("arc " + std::to_string(arc) + " is not in the graph") {}
};

class NoArborescence : public Error {
 public:
  NoArborescence() : Error("arc set contains no spanning out-arborescence") {}
};

class MissingWitness : public Error {
 public:
  MissingWitness() : Error("double parity graph without a parity-violating arc") {}
};

class Unreachable : public Error {
 public:
  explicit Unreachable(std::size_t node)
      : Error("node " + std::to_string(node) + " is unreachable"), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

class CycleSearchBudgetExceeded : public Error {
 public:
  CycleSearchBudgetExceeded() : Error("cycle search exceeded its node-expansion budget") {}
};

class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& what) : Error("instance too large: " + what) {}
};

class Infeasible : public Error {
 public:
  Infeasible() : Error("linear program is infeasible") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("graph has no arcs") {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tredkit
