//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_ERROR_H_
#define LCJT_ERROR_H_

#include <stdexcept>
#include <string>

namespace lcjt {

class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (SMILES, SDF, CSV, config). `position` is a byte
// offset or a 1-based line number depending on the format; -1 if unknown.
class ParseError: public Error {
public:
  ParseError(const std::string &what, int position = -1)
      : Error(position < 0 ? what
                           : what + " (at " + std::to_string(position) + ")"),
        position_(position) { }

  int position() const { return position_; }

private:
  int position_;
};

// A tabular input whose header or layout does not match its schema.
class SchemaError: public ParseError {
public:
  using ParseError::ParseError;
};

class ValenceError: public Error {
public:
  ValenceError(const std::string &what, int atom)
      : Error(what + " (atom " + std::to_string(atom) + ")"), atom_(atom) { }

  int atom() const { return atom_; }

private:
  int atom_;
};

// Aromatic input whose pi bonds cannot be localized.
class KekulizeError: public ParseError {
public:
  using ParseError::ParseError;
};

class ShapeError: public Error {
public:
  using Error::Error;
};

class GeometryError: public Error {
public:
  using Error::Error;
};

// Training produced a NaN or infinite loss.
class NonFiniteLossError: public Error {
public:
  NonFiniteLossError(const std::string &what, int epoch, int batch)
      : Error(what), epoch_(epoch), batch_(batch) { }

  int epoch() const { return epoch_; }
  int batch() const { return batch_; }

private:
  int epoch_;
  int batch_;
};

// A clique label that the vocabulary does not contain.
class VocabularyError: public Error {
public:
  using Error::Error;
};

}  // namespace lcjt

#endif  // LCJT_ERROR_H_
