#pragma once

#include <stdexcept>
#include <string>

namespace esk {

struct collinear_error : std::runtime_error {
  int a, b, c;
  collinear_error(int a_, int b_, int c_)
      : std::runtime_error("collinear input: points " + std::to_string(a_) + "," +
                           std::to_string(b_) + "," + std::to_string(c_)),
        a(a_), b(b_), c(c_) {}
};

struct not_convex_error : std::runtime_error {
  explicit not_convex_error(const std::string& m) : std::runtime_error("not in convex position: " + m) {}
};

struct not_canonical_error : std::runtime_error {
  explicit not_canonical_error(const std::string& m) : std::runtime_error("point set not canonical: " + m) {}
};

struct spec_mismatch_error : std::runtime_error {
  explicit spec_mismatch_error(const std::string& m) : std::runtime_error("spec mismatch: " + m) {}
};

struct index_error : std::out_of_range {
  explicit index_error(const std::string& m) : std::out_of_range("index out of range: " + m) {}
};

struct cap_exceeded_error : std::runtime_error {
  explicit cap_exceeded_error(const std::string& m) : std::runtime_error("cap exceeded: " + m) {}
};

struct spec_invalid_error : std::runtime_error {
  explicit spec_invalid_error(const std::string& m) : std::runtime_error("invalid spec: " + m) {}
};

struct size_overflow_error : std::runtime_error {
  explicit size_overflow_error(const std::string& m) : std::runtime_error("formula size overflow: " + m) {}
};

struct grid_mismatch_error : std::runtime_error {
  explicit grid_mismatch_error(const std::string& m) : std::runtime_error("grid mismatch: " + m) {}
};

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& m) : std::runtime_error("parse error: " + m) {}
};

struct solver_crash_error : std::runtime_error {
  explicit solver_crash_error(const std::string& m) : std::runtime_error("external solver failed: " + m) {}
};

struct boundary_error : std::runtime_error {
  explicit boundary_error(const std::string& m) : std::runtime_error("boundary not in range: " + m) {}
};

}  // namespace esk
